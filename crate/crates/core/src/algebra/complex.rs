use alloc::vec::Vec;

use super::ring::Ring;
use super::sparse::{SparseMatrix, SparseVec};
use super::submodule::Submodule;
use crate::error::Error;

/// Direction of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// `d_k : C_k → C_{k-1}`.
    Homological,
    /// `d^k : C^k → C^{k+1}`.
    Cohomological,
}

/// Bounded complex of finitely generated free modules in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    grading: Grading,
    ranks: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `differentials[k]` leaves degree `k`; its target is degree `k ∓ 1`
    /// (an empty target outside `0..=top`).
    pub fn new(grading: Grading, ranks: Vec<usize>, differentials: Vec<SparseMatrix>) -> Self {
        assert_eq!(
            ranks.len(),
            differentials.len(),
            "one differential per degree"
        );
        let top = ranks.len() as isize - 1;
        for (k, d) in differentials.iter().enumerate() {
            assert_eq!(
                d.ncols(),
                ranks[k],
                "differential {k} has wrong source rank"
            );
            let t = match grading {
                Grading::Homological => k as isize - 1,
                Grading::Cohomological => k as isize + 1,
            };
            let expect = if (0..=top).contains(&t) {
                ranks[t as usize]
            } else {
                0
            };
            assert_eq!(d.nrows(), expect, "differential {k} has wrong target rank");
        }
        ChainComplex {
            grading,
            ranks,
            differentials,
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, k: usize) -> &SparseMatrix {
        &self.differentials[k]
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.differentials
    }

    /// Degree reached by the differential leaving degree `k`.
    pub fn target(&self, k: usize) -> Option<usize> {
        match self.grading {
            Grading::Homological => k.checked_sub(1),
            Grading::Cohomological => (k < self.top()).then_some(k + 1),
        }
    }

    /// Checks `d ∘ d = 0` exactly.
    pub fn check_square_zero(&self, ring: Ring) -> Result<(), Error> {
        for k in 0..self.len() {
            if let Some(t) = self.target(k) {
                if !self.differentials[t]
                    .mul(ring, &self.differentials[k])
                    .is_zero()
                {
                    return Err(Error::NotAComplex { degree: k });
                }
            }
        }
        Ok(())
    }

    /// The same complex with degrees renumbered `j = top − k` and the grading
    /// flipped; `top` must be at least the current top degree.
    pub fn reversed(&self, top: usize) -> ChainComplex {
        assert!(top + 1 >= self.len(), "reversal top too small");
        let grading = match self.grading {
            Grading::Homological => Grading::Cohomological,
            Grading::Cohomological => Grading::Homological,
        };
        let ranks: Vec<usize> = (0..=top).map(|j| self.rank(top - j)).collect();
        let differentials = (0..=top)
            .map(|j| {
                let k = top - j;
                let target_rank = match grading {
                    Grading::Homological => j.checked_sub(1).map_or(0, |t| ranks[t]),
                    Grading::Cohomological => ranks.get(j + 1).copied().unwrap_or(0),
                };
                if k < self.len() {
                    let d = &self.differentials[k];
                    if d.nrows() == target_rank {
                        return d.clone();
                    }
                }
                SparseMatrix::zeros(target_rank, ranks[j])
            })
            .collect();
        ChainComplex::new(grading, ranks, differentials)
    }

    /// Dual complex `Hom(C, R)` with `(δf)(x) = sign(k) · f(d x)` where `k`
    /// is the degree of `f`; matrices are transposes.
    pub fn dual(&self, ring: Ring, sign: impl Fn(usize) -> bool) -> ChainComplex {
        let grading = match self.grading {
            Grading::Homological => Grading::Cohomological,
            Grading::Cohomological => Grading::Homological,
        };
        let ranks = self.ranks.clone();
        let differentials = (0..self.len())
            .map(|k| {
                // The dual differential leaving degree k is the transpose of the
                // original differential arriving at degree k.
                let source = match self.grading {
                    Grading::Homological => k + 1,
                    Grading::Cohomological => k.wrapping_sub(1),
                };
                let target_rank = match grading {
                    Grading::Cohomological => self.rank(k + 1),
                    Grading::Homological => k.checked_sub(1).map_or(0, |t| self.rank(t)),
                };
                if source < self.len() {
                    let t = self.differentials[source].transpose();
                    if sign(k) {
                        t.neg(ring)
                    } else {
                        t
                    }
                } else {
                    SparseMatrix::zeros(target_rank, self.rank(k))
                }
            })
            .collect();
        ChainComplex::new(grading, ranks, differentials)
    }
}

/// Mapping cone of `f : A → B` between homological complexes, with
/// `Cone_j = A_{j−1} ⊕ B_j` and `d(a, b) = (−d a, f a + d b)`.
///
/// `f` is a quasi-isomorphism iff the cone is acyclic.
pub fn mapping_cone(
    ring: Ring,
    a: &ChainComplex,
    b: &ChainComplex,
    f: &[SparseMatrix],
) -> ChainComplex {
    assert_eq!(
        a.grading(),
        Grading::Homological,
        "cone expects homological complexes"
    );
    assert_eq!(
        b.grading(),
        Grading::Homological,
        "cone expects homological complexes"
    );
    let top = a.len().max(b.len());
    let ranks: Vec<usize> = (0..=top)
        .map(|j| j.checked_sub(1).map_or(0, |i| a.rank(i)) + b.rank(j))
        .collect();
    let differentials = (0..=top)
        .map(|j| {
            let target_rank = j.checked_sub(1).map_or(0, |t| ranks[t]);
            let mut cols = Vec::with_capacity(ranks[j]);
            // Summand A_{j-1}: goes to A_{j-2} ⊕ B_{j-1}.
            if j >= 1 {
                let i = j - 1;
                let a_off = 0usize;
                let b_off = if i >= 1 { a.rank(i - 1) } else { 0 };
                for c in 0..a.rank(i) {
                    let mut entries: Vec<(usize, i64)> = Vec::new();
                    if i >= 1 {
                        entries.extend(
                            a.differential(i)
                                .column(c)
                                .iter()
                                .map(|(r, v)| (a_off + r, ring.neg(v))),
                        );
                    }
                    if i < f.len() && b.rank(i) > 0 {
                        entries.extend(f[i].column(c).iter().map(|(r, v)| (b_off + r, v)));
                    }
                    cols.push(SparseVec::from_entries(ring, entries));
                }
            }
            // Summand B_j: goes to B_{j-1}.
            let b_off = if j >= 2 { a.rank(j - 2) } else { 0 };
            for c in 0..b.rank(j) {
                let entries = if j >= 1 {
                    b.differential(j)
                        .column(c)
                        .iter()
                        .map(|(r, v)| (b_off + r, v))
                        .collect()
                } else {
                    Vec::new()
                };
                cols.push(SparseVec::from_sorted(entries));
            }
            SparseMatrix::from_columns(target_rank, cols)
        })
        .collect();
    ChainComplex::new(Grading::Homological, ranks, differentials)
}

/// A complex presented as a family of submodules of coordinate modules,
/// together with its differential written in submodule coordinates.
#[derive(Clone, Debug)]
pub struct ChainComplexPresentation {
    pub complex: ChainComplex,
    pub modules: Vec<Submodule>,
}

impl ChainComplexPresentation {
    /// Restricts ambient differentials to `modules`, failing if some
    /// differential leaves the presented submodules.
    pub fn restrict(
        ring: Ring,
        grading: Grading,
        ambient: &[SparseMatrix],
        modules: Vec<Submodule>,
    ) -> Result<Self, Error> {
        assert_eq!(ambient.len(), modules.len(), "one module per degree");
        let top = modules.len() as isize - 1;
        let ranks: Vec<usize> = modules.iter().map(Submodule::rank).collect();
        let mut differentials = Vec::with_capacity(modules.len());
        for k in 0..modules.len() {
            let t = match grading {
                Grading::Homological => k as isize - 1,
                Grading::Cohomological => k as isize + 1,
            };
            if !(0..=top).contains(&t) {
                differentials.push(SparseMatrix::zeros(0, ranks[k]));
                continue;
            }
            let target = &modules[t as usize];
            let cols = modules[k]
                .generators()
                .iter()
                .map(|g| target.coordinates(ring, &ambient[k].mul_vec(ring, g)))
                .collect::<Result<Vec<_>, _>>()?;
            differentials.push(SparseMatrix::from_columns(target.rank(), cols));
        }
        Ok(ChainComplexPresentation {
            complex: ChainComplex::new(grading, ranks, differentials),
            modules,
        })
    }

    /// Coordinates of an ambient vector of degree `k` in the presentation.
    pub fn coordinates(&self, ring: Ring, k: usize, x: &SparseVec) -> Result<SparseVec, Error> {
        self.modules[k].coordinates(ring, x)
    }

    pub fn embed(&self, ring: Ring, k: usize, coords: &SparseVec) -> SparseVec {
        self.modules[k].embed(ring, coords)
    }

    /// Matrix, in presentation coordinates, of the ambient map `m` from degree
    /// `k` of `self` to degree `l` of `other`.
    pub fn map_matrix(
        &self,
        ring: Ring,
        k: usize,
        other: &ChainComplexPresentation,
        l: usize,
        m: impl Fn(&SparseVec) -> SparseVec,
    ) -> Result<SparseMatrix, Error> {
        let cols = self.modules[k]
            .generators()
            .iter()
            .map(|g| other.coordinates(ring, l, &m(g)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix::from_columns(other.modules[l].rank(), cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn interval() -> ChainComplex {
        // Two vertices joined by an edge.
        let ring = Ring::Integers;
        let d1 =
            SparseMatrix::from_columns(2, vec![SparseVec::from_entries(ring, [(0, -1), (1, 1)])]);
        ChainComplex::new(
            Grading::Homological,
            vec![2, 1],
            vec![SparseMatrix::zeros(0, 2), d1],
        )
    }

    #[test]
    fn reversal_round_trip() {
        let c = interval();
        let r = c.reversed(1);
        assert_eq!(r.grading(), Grading::Cohomological);
        assert_eq!(r.ranks(), &[1, 2]);
        let back = r.reversed(1);
        assert_eq!(back.ranks(), c.ranks());
        assert_eq!(back.differential(1), c.differential(1));
    }

    #[test]
    fn identity_cone_is_a_complex() {
        let ring = Ring::Integers;
        let c = interval();
        let f = vec![SparseMatrix::identity(2), SparseMatrix::identity(1)];
        let cone = mapping_cone(ring, &c, &c, &f);
        cone.check_square_zero(ring).unwrap();
        assert_eq!(cone.ranks(), &[2, 3, 1]);
    }
}

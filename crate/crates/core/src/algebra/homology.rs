//! Homology of bounded free complexes.
//!
//! The complex is first shrunk by eliminating pairs of generators joined by a
//! unit entry of the differential; each elimination is a chain homotopy
//! equivalence whose projection and section are recorded. The small remaining
//! complex is handled with Smith normal forms.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::complex::{ChainComplex, Grading};
use super::ring::{CoefficientRing, Ring};
use super::snf::{smith_normal_form, Smith};
use super::sparse::{DenseMatrix, SparseMatrix, SparseVec};
use crate::error::Error;

/// One homology module: `R^free_rank ⊕ ⊕ R/(t)` for `t` in `torsion`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let r = if first { Ok(()) } else { f.write_str(" + ") };
            first = false;
            r
        };
        if self.free_rank > 0 {
            sep(f)?;
            if self.free_rank == 1 {
                f.write_str("R")?;
            } else {
                write!(f, "R^{}", self.free_rank)?;
            }
        }
        for t in &self.torsion {
            sep(f)?;
            write!(f, "Z/{t}")?;
        }
        Ok(())
    }
}

/// Homology in every degree `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologySummary {
    pub degrees: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn degree(&self, k: usize) -> HomologyGroup {
        self.degrees.get(k).cloned().unwrap_or_default()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(HomologyGroup::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.free_rank).collect()
    }

    /// Drops torsion, as appropriate for ℚ-coefficients.
    pub fn without_torsion(mut self) -> Self {
        for g in &mut self.degrees {
            g.torsion.clear();
        }
        self
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.degrees.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Elimination {
    /// Lowering index of the eliminated column.
    level: usize,
    row: usize,
    col: usize,
    u_inv: i64,
    /// Column `col` without `row`, at the time of elimination.
    beta: SparseVec,
    /// Other nonzero entries `(column, value)` of `row`.
    alpha: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
struct DenseLevel {
    /// Original indices of the generators surviving the reduction.
    survivors: Vec<usize>,
    /// Position in `survivors` of every original index.
    position: Vec<Option<usize>>,
    /// Smith form of the outgoing reduced differential.
    out: Smith,
    /// Smith form of the incoming boundaries written in cycle coordinates.
    incoming: Smith,
    group: HomologyGroup,
    /// Number of unit divisors of `incoming` (classes they cut out vanish).
    units: usize,
}

/// Homology of a complex, with generators and a classifier for cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    ring: Ring,
    grading: Grading,
    top: usize,
    log: Vec<Elimination>,
    levels: Vec<DenseLevel>,
}

impl Homology {
    pub fn compute(ring: Ring, complex: &ChainComplex) -> Result<Self, Error> {
        complex.check_square_zero(ring)?;
        let top = complex.top();
        // Lowering index j: homological degree j, or cohomological degree top − j.
        let lowered = match complex.grading() {
            Grading::Homological => complex.clone(),
            Grading::Cohomological => complex.reversed(top),
        };
        let n = lowered.len();
        let mut cols: Vec<Vec<SparseVec>> = (0..n)
            .map(|j| lowered.differential(j).columns().to_vec())
            .collect();
        let mut rows: Vec<Vec<BTreeSet<usize>>> = (0..n)
            .map(|j| {
                let nrows = lowered.differential(j).nrows();
                let mut r = vec![BTreeSet::new(); nrows];
                for (c, col) in cols[j].iter().enumerate() {
                    for (i, _) in col.iter() {
                        r[i].insert(c);
                    }
                }
                r
            })
            .collect();
        let mut alive: Vec<Vec<bool>> = (0..n).map(|j| vec![true; lowered.rank(j)]).collect();
        let mut log = Vec::new();

        loop {
            let mut progress = false;
            for j in 1..n {
                for c in 0..cols[j].len() {
                    if !alive[j][c] {
                        continue;
                    }
                    let pick = cols[j][c]
                        .iter()
                        .filter(|&(_, v)| ring.is_unit(v))
                        .min_by_key(|&(r, _)| (rows[j][r].len(), r));
                    let Some((r, u)) = pick else { continue };
                    progress = true;
                    let u_inv = ring.unit_inverse(u);
                    let col_c = cols[j][c].clone();
                    let beta =
                        SparseVec::from_sorted(col_c.iter().filter(|&(i, _)| i != r).collect());
                    let others: Vec<usize> =
                        rows[j][r].iter().copied().filter(|&x| x != c).collect();
                    let mut alpha = Vec::with_capacity(others.len());
                    for &c2 in &others {
                        let v = cols[j][c2].get(r);
                        alpha.push((c2, v));
                        let factor = ring.neg(ring.mul(v, u_inv));
                        let updated = cols[j][c2].add_scaled(ring, &col_c, factor);
                        for (i, _) in col_c.iter() {
                            if updated.get(i) == 0 {
                                rows[j][i].remove(&c2);
                            } else {
                                rows[j][i].insert(c2);
                            }
                        }
                        cols[j][c2] = updated;
                    }
                    for (i, _) in col_c.iter() {
                        rows[j][i].remove(&c);
                    }
                    cols[j][c] = SparseVec::new();
                    alive[j][c] = false;
                    alive[j - 1][r] = false;
                    debug_assert!(rows[j][r].is_empty());
                    // Row c of the differential arriving at degree j.
                    if j + 1 < n {
                        let hit: Vec<usize> =
                            core::mem::take(&mut rows[j + 1][c]).into_iter().collect();
                        for c3 in hit {
                            cols[j + 1][c3] = SparseVec::from_sorted(
                                cols[j + 1][c3].iter().filter(|&(i, _)| i != c).collect(),
                            );
                        }
                    }
                    // Column r of the differential leaving degree j − 1.
                    let col_r = core::mem::take(&mut cols[j - 1][r]);
                    for (i, _) in col_r.iter() {
                        rows[j - 1][i].remove(&r);
                    }
                    log.push(Elimination {
                        level: j,
                        row: r,
                        col: c,
                        u_inv,
                        beta,
                        alpha,
                    });
                }
            }
            if !progress {
                break;
            }
        }

        // Dense stage.
        let survivors: Vec<Vec<usize>> = (0..n)
            .map(|j| (0..alive[j].len()).filter(|&i| alive[j][i]).collect())
            .collect();
        let positions: Vec<Vec<Option<usize>>> = (0..n)
            .map(|j| {
                let mut p = vec![None; alive[j].len()];
                for (k, &i) in survivors[j].iter().enumerate() {
                    p[i] = Some(k);
                }
                p
            })
            .collect();
        let dense = |j: usize| -> DenseMatrix {
            let rows_n = if j == 0 { 0 } else { survivors[j - 1].len() };
            let mut m = DenseMatrix::zeros(rows_n, survivors[j].len());
            if j > 0 {
                for (b, &c) in survivors[j].iter().enumerate() {
                    for (i, v) in cols[j][c].iter() {
                        let a = positions[j - 1][i].expect("entry in an eliminated row");
                        m.set(a, b, v);
                    }
                }
            }
            m
        };
        let outs: Vec<Smith> = (0..n).map(|j| smith_normal_form(ring, &dense(j))).collect();
        let mut levels = Vec::with_capacity(n);
        for j in 0..n {
            let out = outs[j].clone();
            let r = out.rank();
            let m = survivors[j].len();
            let y = if j + 1 < n {
                let v_in = out.v.mul(ring, &dense(j + 1));
                debug_assert!((0..r).all(|i| v_in.row(i).iter().all(|&x| x == 0)));
                v_in.select(r..m, 0..v_in.cols())
            } else {
                DenseMatrix::zeros(m - r, 0)
            };
            let incoming = smith_normal_form(ring, &y);
            let mut units = 0;
            let mut torsion = Vec::new();
            for &d in &incoming.diagonal {
                if ring.is_unit(d) {
                    units += 1;
                } else {
                    torsion.push(d);
                }
            }
            let group = HomologyGroup {
                free_rank: (m - r) - incoming.rank(),
                torsion,
            };
            levels.push(DenseLevel {
                survivors: survivors[j].clone(),
                position: positions[j].clone(),
                out,
                incoming,
                group,
                units,
            });
        }
        Ok(Homology {
            ring,
            grading: complex.grading(),
            top,
            log,
            levels,
        })
    }

    fn level(&self, k: usize) -> usize {
        match self.grading {
            Grading::Homological => k,
            Grading::Cohomological => self.top - k,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            degrees: (0..=self.top).map(|k| self.group(k).clone()).collect(),
        }
    }

    pub fn group(&self, k: usize) -> &HomologyGroup {
        &self.levels[self.level(k)].group
    }

    /// Reduced-complex coordinates of a chain of degree `k`.
    fn project(&self, j: usize, x: &SparseVec) -> Vec<i64> {
        let ring = self.ring;
        let mut x = x.clone();
        for e in &self.log {
            if e.level == j + 1 {
                let xr = x.get(e.row);
                if xr != 0 {
                    x = x.add_scaled(ring, &e.beta, ring.neg(ring.mul(xr, e.u_inv)));
                }
                x = SparseVec::from_sorted(x.iter().filter(|&(i, _)| i != e.row).collect());
            } else if e.level == j {
                x = SparseVec::from_sorted(x.iter().filter(|&(i, _)| i != e.col).collect());
            }
        }
        let lvl = &self.levels[j];
        let mut out = vec![0; lvl.survivors.len()];
        for (i, v) in x.iter() {
            out[lvl.position[i].expect("projection left an eliminated generator")] = v;
        }
        out
    }

    /// Chain of degree `k` lifted from reduced-complex coordinates.
    fn lift(&self, j: usize, reduced: &[i64]) -> SparseVec {
        let ring = self.ring;
        let lvl = &self.levels[j];
        let mut x = SparseVec::from_entries(
            ring,
            reduced
                .iter()
                .enumerate()
                .map(|(a, &v)| (lvl.survivors[a], v)),
        );
        for e in self.log.iter().rev() {
            if e.level == j {
                let a = e
                    .alpha
                    .iter()
                    .fold(0, |acc, &(c, v)| ring.add(acc, ring.mul(v, x.get(c))));
                if a != 0 {
                    let val = ring.neg(ring.mul(e.u_inv, a));
                    x = x.add_scaled(ring, &SparseVec::unit(e.col), val);
                }
            }
        }
        x
    }

    /// Cycle representatives: torsion generators first (orders as in
    /// `group(k).torsion`), then free generators.
    pub fn generators(&self, k: usize) -> Vec<SparseVec> {
        let ring = self.ring;
        let j = self.level(k);
        let lvl = &self.levels[j];
        let r = lvl.out.rank();
        let m = lvl.survivors.len();
        let cycles = lvl.out.v_inv.select(0..m, r..m);
        let basis = cycles.mul(ring, &lvl.incoming.u);
        (lvl.units..basis.cols())
            .map(|c| self.lift(j, &basis.column(c)))
            .collect()
    }

    pub fn free_generators(&self, k: usize) -> Vec<SparseVec> {
        let t = self.group(k).torsion.len();
        self.generators(k).split_off(t)
    }

    /// Class of a cycle of degree `k`: residues against the torsion
    /// generators, then coefficients against the free generators.
    pub fn classify(&self, k: usize, cycle: &SparseVec) -> Result<Vec<i64>, Error> {
        let ring = self.ring;
        let j = self.level(k);
        let lvl = &self.levels[j];
        let y = self.project(j, cycle);
        let r = lvl.out.rank();
        let z = lvl.out.v.mul_vec(ring, &y);
        if z[..r].iter().any(|&v| v != 0) {
            return Err(Error::NotAComplex { degree: k });
        }
        let w = lvl.incoming.u_inv.mul_vec(ring, &z[r..]);
        let mut out = Vec::with_capacity(w.len() - lvl.units);
        for (i, &v) in w.iter().enumerate().skip(lvl.units) {
            match lvl.incoming.diagonal.get(i) {
                Some(&d) => out.push(v.rem_euclid(d)),
                None => out.push(v),
            }
        }
        Ok(out)
    }

    /// Free-part coefficients of a cycle.
    pub fn classify_free(&self, k: usize, cycle: &SparseVec) -> Result<Vec<i64>, Error> {
        let t = self.group(k).torsion.len();
        Ok(self.classify(k, cycle)?.split_off(t))
    }

    pub fn is_boundary(&self, k: usize, cycle: &SparseVec) -> Result<bool, Error> {
        Ok(self.classify(k, cycle)?.iter().all(|&v| v == 0))
    }
}

/// Homology summary with coefficients in `coeff`.
pub fn homology(complex: &ChainComplex, coeff: CoefficientRing) -> Result<HomologySummary, Error> {
    let s = Homology::compute(coeff.engine(), complex)?.summary();
    Ok(if coeff.reports_torsion() {
        s
    } else {
        s.without_torsion()
    })
}

/// Matrix of the map induced on homology in degree `k` by `f`, columns
/// indexed by the generators of `source`, rows by those of `target`.
pub fn induced_map(
    source: &Homology,
    target: &Homology,
    k_source: usize,
    k_target: usize,
    f: &SparseMatrix,
) -> Result<DenseMatrix, Error> {
    let ring = source.ring;
    let gens = source.generators(k_source);
    let size = {
        let g = target.group(k_target);
        g.free_rank + g.torsion.len()
    };
    let mut m = DenseMatrix::zeros(size, gens.len());
    for (c, g) in gens.iter().enumerate() {
        let image = f.mul_vec(ring, g);
        for (r, v) in target.classify(k_target, &image)?.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_of_triangle() -> ChainComplex {
        // Vertices 0,1,2; edges 01,02,12.
        let ring = Ring::Integers;
        let e = |a: usize, b: usize| SparseVec::from_entries(ring, [(a, -1), (b, 1)]);
        let d1 = SparseMatrix::from_columns(3, vec![e(0, 1), e(0, 2), e(1, 2)]);
        ChainComplex::new(
            Grading::Homological,
            vec![3, 3],
            vec![SparseMatrix::zeros(0, 3), d1],
        )
    }

    #[test]
    fn circle_homology() {
        let c = boundary_of_triangle();
        let h = Homology::compute(Ring::Integers, &c).unwrap();
        assert_eq!(h.summary().ranks(), vec![1, 1]);
        let g = h.free_generators(1);
        assert_eq!(g.len(), 1);
        assert_eq!(h.classify(1, &g[0]).unwrap(), vec![1]);
    }

    #[test]
    fn torsion_detected() {
        // Z --2--> Z in degrees 1 → 0.
        let d1 =
            SparseMatrix::from_columns(1, vec![SparseVec::from_entries(Ring::Integers, [(0, 2)])]);
        let c = ChainComplex::new(
            Grading::Homological,
            vec![1, 1],
            vec![SparseMatrix::zeros(0, 1), d1],
        );
        let h = Homology::compute(Ring::Integers, &c).unwrap();
        assert_eq!(h.group(0).torsion, vec![2]);
        assert_eq!(h.group(1).free_rank, 0);
        assert_eq!(h.classify(0, &SparseVec::unit(0)).unwrap(), vec![1]);
        let two = SparseVec::from_entries(Ring::Integers, [(0, 2)]);
        assert!(h.is_boundary(0, &two).unwrap());
    }
}

//! Sub-lattices of coordinate modules and exact coordinate solving.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::ring::Ring;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::Error;

/// Extended gcd: `(g, s, t)` with `g = s a + t b`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    let conv = |x: i128| i64::try_from(x).expect("integer coefficient overflow");
    (conv(r0), conv(s0), conv(t0))
}

/// Column echelon form: reduced columns have pairwise distinct leading
/// indices (or are zero), and `reduced[j] = Σ_i transform[j][i] · input[i]`
/// with an invertible transform.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub reduced: Vec<SparseVec>,
    pub transform: Vec<SparseVec>,
    pivot_of_row: BTreeMap<usize, usize>,
}

impl ColumnEchelon {
    pub fn new(ring: Ring, columns: Vec<SparseVec>) -> Self {
        let n = columns.len();
        let mut reduced = columns;
        let mut transform: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
        let mut pivot_of_row: BTreeMap<usize, usize> = BTreeMap::new();
        for j in 0..n {
            while let Some((lead, b)) = reduced[j].leading() {
                let Some(&p) = pivot_of_row.get(&lead) else {
                    pivot_of_row.insert(lead, j);
                    break;
                };
                let a = reduced[p].get(lead);
                if let Some(q) = ring.divide(b, a) {
                    let nq = ring.neg(q);
                    reduced[j] = reduced[j].add_scaled(ring, &reduced[p], nq);
                    transform[j] = transform[j].add_scaled(ring, &transform[p], nq);
                } else {
                    // Only reachable over ℤ: replace the pair by a unimodular
                    // combination carrying gcd(a, b) at the pivot.
                    let (g, s, t) = ext_gcd(a, b);
                    let (bg, ag) = (b / g, a / g);
                    let new_p = reduced[p].combine(ring, s, &reduced[j], t);
                    let new_j = reduced[p].combine(ring, bg, &reduced[j], -ag);
                    let tp = transform[p].combine(ring, s, &transform[j], t);
                    let tj = transform[p].combine(ring, bg, &transform[j], -ag);
                    reduced[p] = new_p;
                    reduced[j] = new_j;
                    transform[p] = tp;
                    transform[j] = tj;
                }
            }
        }
        ColumnEchelon {
            reduced,
            transform,
            pivot_of_row,
        }
    }

    /// Indices of columns reduced to zero; their transforms span the kernel.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.reduced.len()).filter(|&j| self.reduced[j].is_zero())
    }

    pub fn rank(&self) -> usize {
        self.pivot_of_row.len()
    }

    /// Writes `x` as a combination of the reduced columns, returning the
    /// coefficients against the reduced columns, or `None` if `x` is not in
    /// their span.
    pub fn solve_reduced(&self, ring: Ring, x: &SparseVec) -> Option<SparseVec> {
        let mut rest = x.clone();
        let mut coeffs: Vec<(usize, i64)> = Vec::new();
        while let Some((lead, v)) = rest.leading() {
            let p = *self.pivot_of_row.get(&lead)?;
            let q = ring.divide(v, self.reduced[p].get(lead))?;
            rest = rest.add_scaled(ring, &self.reduced[p], ring.neg(q));
            coeffs.push((p, q));
        }
        Some(SparseVec::from_entries(ring, coeffs))
    }

    /// Coefficients of `x` against the original input columns.
    pub fn solve(&self, ring: Ring, x: &SparseVec) -> Option<SparseVec> {
        let c = self.solve_reduced(ring, x)?;
        let mut acc = SparseVec::new();
        for (p, q) in c.iter() {
            acc = acc.add_scaled(ring, &self.transform[p], q);
        }
        Some(acc)
    }
}

/// A free submodule of `R^ambient_dim` given by an explicit basis.
///
/// Generators are the unit vectors at `coordinates`, followed by `extra`
/// vectors. The two families together must be linearly independent.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient_dim: usize,
    coordinates: Vec<usize>,
    extra: Vec<SparseVec>,
    slot: Vec<Option<usize>>,
    echelon: ColumnEchelon,
}

impl Submodule {
    pub fn new(
        ring: Ring,
        ambient_dim: usize,
        coordinates: Vec<usize>,
        extra: Vec<SparseVec>,
    ) -> Self {
        let mut slot = vec![None; ambient_dim];
        for (k, &c) in coordinates.iter().enumerate() {
            assert!(slot[c].is_none(), "coordinate generator listed twice");
            slot[c] = Some(k);
        }
        let residual: Vec<SparseVec> = extra
            .iter()
            .map(|v| SparseVec::from_sorted(v.iter().filter(|&(i, _)| slot[i].is_none()).collect()))
            .collect();
        let echelon = ColumnEchelon::new(ring, residual);
        assert_eq!(
            echelon.rank(),
            extra.len(),
            "submodule generators are dependent"
        );
        Submodule {
            ambient_dim,
            coordinates,
            extra,
            slot,
            echelon,
        }
    }

    pub fn full(ring: Ring, n: usize) -> Self {
        Self::new(ring, n, (0..n).collect(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.coordinates.len() + self.extra.len()
    }

    pub fn coordinate_generators(&self) -> &[usize] {
        &self.coordinates
    }

    pub fn extra_generators(&self) -> &[SparseVec] {
        &self.extra
    }

    pub fn generator(&self, k: usize) -> SparseVec {
        if k < self.coordinates.len() {
            SparseVec::unit(self.coordinates[k])
        } else {
            self.extra[k - self.coordinates.len()].clone()
        }
    }

    pub fn generators(&self) -> Vec<SparseVec> {
        (0..self.rank()).map(|k| self.generator(k)).collect()
    }

    /// Ambient vector with the given coordinates.
    pub fn embed(&self, ring: Ring, coords: &SparseVec) -> SparseVec {
        let nc = self.coordinates.len();
        let mut direct = Vec::new();
        let mut acc = SparseVec::new();
        for (k, c) in coords.iter() {
            if k < nc {
                direct.push((self.coordinates[k], c));
            } else {
                acc = acc.add_scaled(ring, &self.extra[k - nc], c);
            }
        }
        acc.add_scaled(ring, &SparseVec::from_entries(ring, direct), 1)
    }

    /// Coordinates of an ambient vector against the generators.
    pub fn coordinates(&self, ring: Ring, x: &SparseVec) -> Result<SparseVec, Error> {
        let nc = self.coordinates.len();
        let residual =
            SparseVec::from_sorted(x.iter().filter(|&(i, _)| self.slot[i].is_none()).collect());
        let extra_coeffs = self
            .echelon
            .solve(ring, &residual)
            .ok_or(Error::NotInSubmodule)?;
        let mut rest = x.clone();
        for (k, c) in extra_coeffs.iter() {
            rest = rest.add_scaled(ring, &self.extra[k], ring.neg(c));
        }
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (i, v) in rest.iter() {
            match self.slot[i] {
                Some(k) => out.push((k, v)),
                None => return Err(Error::NotInSubmodule),
            }
        }
        out.extend(extra_coeffs.iter().map(|(k, c)| (nc + k, c)));
        Ok(SparseVec::from_entries(ring, out))
    }

    pub fn contains(&self, ring: Ring, x: &SparseVec) -> bool {
        self.coordinates(ring, x).is_ok()
    }
}

/// Basis of `{x ∈ span(e_a : a ∈ domain) : M x ∈ span(e_b : allowed[b])}`.
///
/// Over ℤ the kernel lattice is saturated, so the basis returned spans it
/// exactly (no index). Domain columns untouched by forbidden rows come first,
/// in the given order, then kernel vectors of the remaining columns.
pub fn saturated_submodule_basis(
    ring: Ring,
    m: &SparseMatrix,
    domain: &[usize],
    allowed: &[bool],
) -> Submodule {
    assert_eq!(allowed.len(), m.nrows(), "row mask has the wrong length");
    let mut free = Vec::new();
    let mut constrained = Vec::new();
    for &a in domain {
        if m.column(a).iter().all(|(i, _)| allowed[i]) {
            free.push(a);
        } else {
            constrained.push(a);
        }
    }
    let restricted: Vec<SparseVec> = constrained
        .iter()
        .map(|&a| {
            SparseVec::from_sorted(m.column(a).iter().filter(|&(i, _)| !allowed[i]).collect())
        })
        .collect();
    let echelon = ColumnEchelon::new(ring, restricted);
    let kernel: Vec<SparseVec> = echelon
        .zero_columns()
        .map(|j| {
            SparseVec::from_entries(
                ring,
                echelon.transform[j]
                    .iter()
                    .map(|(k, v)| (constrained[k], v)),
            )
        })
        .collect();
    Submodule::new(ring, m.ncols(), free, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_constraint_keeps_allowed_direction() {
        let ring = Ring::Integers;
        let m = SparseMatrix::identity(2);
        let s = saturated_submodule_basis(ring, &m, &[0, 1], &[true, false]);
        assert_eq!(s.generators(), vec![SparseVec::unit(0)]);
    }

    #[test]
    fn kernel_is_saturated() {
        // Row (2, 4) has kernel spanned by (2, -1), not (4, -2).
        let ring = Ring::Integers;
        let col = |v: i64| SparseVec::from_entries(ring, [(0, v)]);
        let m = SparseMatrix::from_columns(1, vec![col(2), col(4)]);
        let s = saturated_submodule_basis(ring, &m, &[0, 1], &[false]);
        assert_eq!(s.rank(), 1);
        let g = s.generator(0);
        assert_eq!(g.get(0).abs(), 2);
        assert_eq!(g.get(1).abs(), 1);
        let x = SparseVec::from_entries(ring, [(0, 6), (1, -3)]);
        assert_eq!(s.coordinates(ring, &x).unwrap().nnz(), 1);
        let y = SparseVec::from_entries(ring, [(0, 1), (1, 0)]);
        assert!(s.coordinates(ring, &y).is_err());
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12, 18), (-7, 3), (5, -10), (0, 4)] {
            let (g, s, t) = ext_gcd(a, b);
            assert_eq!(s * a + t * b, g);
        }
    }
}

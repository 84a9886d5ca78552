//! Smith normal form of dense matrices.

use alloc::vec::Vec;

use super::ring::Ring;
use super::sparse::DenseMatrix;
use super::submodule::ext_gcd;

/// `M = U · D · V` with `U`, `V` invertible over the ring and `D` diagonal,
/// `d_1 | d_2 | ⋯`, normalized (positive over ℤ, 1 over a field).
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: DenseMatrix,
    pub u_inv: DenseMatrix,
    pub v: DenseMatrix,
    pub v_inv: DenseMatrix,
    /// Nonzero diagonal entries, in order.
    pub diagonal: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// `D` as a full matrix of the original shape.
    pub fn d(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, &x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x);
        }
        d
    }
}

struct Work {
    ring: Ring,
    a: DenseMatrix,
    p: DenseMatrix,
    p_inv: DenseMatrix,
    q: DenseMatrix,
    q_inv: DenseMatrix,
}

/// Inverse of an invertible 2×2 matrix `[m0 m1; m2 m3]`, same layout.
fn inverse_2x2(r: Ring, m: [i64; 4]) -> [i64; 4] {
    let d = r.unit_inverse(r.sub(r.mul(m[0], m[3]), r.mul(m[1], m[2])));
    [
        r.mul(d, m[3]),
        r.neg(r.mul(d, m[1])),
        r.neg(r.mul(d, m[2])),
        r.mul(d, m[0]),
    ]
}

impl Work {
    fn add_row(&mut self, target: usize, source: usize, c: i64) {
        let r = self.ring;
        self.a.add_row(r, target, source, c);
        self.p.add_row(r, target, source, c);
        self.p_inv.add_col(r, source, target, r.neg(c));
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.p.swap_rows(x, y);
        self.p_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.q.swap_cols(x, y);
        self.q_inv.swap_rows(x, y);
    }

    fn scale_row(&mut self, i: usize, unit: i64) {
        let r = self.ring;
        self.a.scale_row(r, i, unit);
        self.p.scale_row(r, i, unit);
        self.p_inv.scale_col(r, i, r.unit_inverse(unit));
    }

    /// Rows `x`, `y` become `m0 x + m1 y` and `m2 x + m3 y`.
    fn mix_rows(&mut self, x: usize, y: usize, m: [i64; 4]) {
        let r = self.ring;
        let n = inverse_2x2(r, m);
        self.a.mix_rows(r, x, y, m);
        self.p.mix_rows(r, x, y, m);
        self.p_inv.mix_cols(r, x, y, [n[0], n[2], n[1], n[3]]);
    }

    /// Columns `x`, `y` become `m0 x + m1 y` and `m2 x + m3 y`.
    fn mix_cols(&mut self, x: usize, y: usize, m: [i64; 4]) {
        let r = self.ring;
        let n = inverse_2x2(r, m);
        self.a.mix_cols(r, x, y, m);
        self.q.mix_cols(r, x, y, m);
        self.q_inv.mix_rows(r, x, y, [n[0], n[2], n[1], n[3]]);
    }

    /// Exchanges the roles of rows and columns: `P A Q = D` becomes
    /// `Qᵀ Aᵀ Pᵀ = Dᵀ`.
    fn transpose(&mut self) {
        self.a = self.a.transpose();
        let (p, p_inv) = (self.q.transpose(), self.q_inv.transpose());
        self.q = self.p.transpose();
        self.q_inv = self.p_inv.transpose();
        self.p = p;
        self.p_inv = p_inv;
    }

    fn normalize_row(&mut self, i: usize, c: i64) {
        let unit = self.ring.normalizing_unit(c);
        if unit != 1 {
            self.scale_row(i, unit);
        }
    }

    /// Reduces the entries above every pivot modulo that pivot.
    fn reduce_above(&mut self, pivots: &[usize]) {
        for (k, &c) in pivots.iter().enumerate() {
            let pivot = self.a.get(k, c);
            for j in 0..k {
                let (q, _) = self.ring.div_rem(self.a.get(j, c), pivot);
                self.add_row(j, k, self.ring.neg(q));
            }
        }
    }

    /// Brings `a` to reduced row echelon form (the Hermite normal form over
    /// ℤ) and returns the pivot columns. Rows are inserted one at a time and
    /// the echelon rows are kept reduced, which bounds entry growth.
    fn hermite_rows(&mut self) -> Vec<usize> {
        let ring = self.ring;
        let cols = self.a.cols();
        let mut pivots: Vec<usize> = Vec::new();
        for i in 0..self.a.rows() {
            let r = pivots.len();
            self.swap_rows(r, i);
            let mut k = 0;
            let inserted = loop {
                let Some(lead) = (0..cols).find(|&c| self.a.get(r, c) != 0) else {
                    break None;
                };
                if k == pivots.len() || lead < pivots[k] {
                    break Some((k, lead));
                }
                let c = pivots[k];
                let v = self.a.get(r, c);
                if v != 0 {
                    let pivot = self.a.get(k, c);
                    match ring.divide(v, pivot) {
                        Some(q) => self.add_row(r, k, ring.neg(q)),
                        None => {
                            // Only over ℤ: replace the pivot by the gcd.
                            let (g, s, u) = ext_gcd(pivot, v);
                            self.mix_rows(k, r, [s, u, -v / g, pivot / g]);
                            self.normalize_row(k, self.a.get(k, c));
                            self.reduce_above(&pivots);
                        }
                    }
                }
                k += 1;
            };
            if let Some((k, lead)) = inserted {
                for j in (k..r).rev() {
                    self.swap_rows(j, j + 1);
                }
                self.normalize_row(k, self.a.get(k, lead));
                pivots.insert(k, lead);
            }
            self.reduce_above(&pivots);
        }
        pivots
    }

    /// Whether every row and column has at most one nonzero entry.
    fn is_monomial(&self) -> bool {
        let nonzero = |v: i64| (v != 0) as usize;
        (0..self.a.rows()).all(|i| self.a.row(i).iter().map(|&v| nonzero(v)).sum::<usize>() <= 1)
            && (0..self.a.cols()).all(|j| {
                (0..self.a.rows())
                    .map(|i| nonzero(self.a.get(i, j)))
                    .sum::<usize>()
                    <= 1
            })
    }
}

pub fn smith_normal_form(ring: Ring, m: &DenseMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        a: m.clone(),
        p: DenseMatrix::identity(rows),
        p_inv: DenseMatrix::identity(rows),
        q: DenseMatrix::identity(cols),
        q_inv: DenseMatrix::identity(cols),
    };
    // Alternate row and column Hermite forms until the matrix is diagonal up
    // to permutation; each round that changes anything shrinks a pivot.
    let mut transposed = false;
    loop {
        w.hermite_rows();
        if w.is_monomial() {
            break;
        }
        w.transpose();
        transposed = !transposed;
    }
    if transposed {
        w.transpose();
    }
    let mut rank = 0;
    for i in 0..rows {
        if let Some(j) = (0..cols).find(|&j| w.a.get(i, j) != 0) {
            w.swap_rows(rank, i);
            w.swap_cols(rank, j);
            rank += 1;
        }
    }
    // Enforce d_i | d_j through diag(a, b) ~ diag(gcd, lcm).
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (w.a.get(i, i), w.a.get(j, j));
            if ring.divide(b, a).is_some() {
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            w.mix_rows(i, j, [1, 1, -t * (b / g), s * (a / g)]);
            w.mix_cols(i, j, [s, t, -(b / g), a / g]);
        }
    }
    for i in 0..rank {
        w.normalize_row(i, w.a.get(i, i));
    }
    let diagonal = (0..rank).map(|i| w.a.get(i, i)).collect();
    Smith {
        u: w.p_inv,
        u_inv: w.p,
        v: w.q_inv,
        v_inv: w.q,
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn reconstruct(ring: Ring, s: &Smith) -> DenseMatrix {
        s.u.mul(ring, &s.d()).mul(ring, &s.v)
    }

    #[test]
    fn diag_two_three() {
        let m = DenseMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(Ring::Integers, &m);
        assert_eq!(s.diagonal, vec![1, 6]);
        assert_eq!(reconstruct(Ring::Integers, &s), m);
    }

    #[test]
    fn zero_and_identity() {
        let z = DenseMatrix::zeros(2, 3);
        assert!(smith_normal_form(Ring::Integers, &z).diagonal.is_empty());
        let i = DenseMatrix::identity(3);
        assert_eq!(
            smith_normal_form(Ring::Integers, &i).diagonal,
            vec![1, 1, 1]
        );
    }

    #[test]
    fn inverses_are_inverses() {
        let m = DenseMatrix::from_rows(&[vec![4, 6, 2], vec![6, 9, 3], vec![2, 5, 7]]);
        let ring = Ring::Integers;
        let s = smith_normal_form(ring, &m);
        assert_eq!(s.u.mul(ring, &s.u_inv), DenseMatrix::identity(3));
        assert_eq!(s.v.mul(ring, &s.v_inv), DenseMatrix::identity(3));
        assert_eq!(reconstruct(ring, &s), m);
    }

    #[test]
    fn field_rank() {
        let ring = Ring::PrimeField(2);
        let m = DenseMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let s = smith_normal_form(ring, &m);
        assert_eq!(s.rank(), 2);
        assert_eq!(reconstruct(ring, &s), m);
    }
}

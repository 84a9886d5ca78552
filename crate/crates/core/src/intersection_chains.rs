//! Perverse degrees, allowability, and the intersection chain complexes.
//!
//! Chains of degree `k` are sparse vectors indexed by the `k`-simplices of
//! the complex.

use alloc::vec::Vec;

use crate::algebra::{
    saturated_submodule_basis, ChainComplexPresentation, CoefficientRing, Grading, Ring,
    SparseMatrix, SparseVec,
};
use crate::error::Error;
use crate::filtered_complex::FilteredComplex;
use crate::perversity::Perversity;

/// A dimension or the value `−∞` (dimension of the empty set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PerverseDegree {
    NegInfinity,
    Finite(i64),
}

impl PerverseDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            PerverseDegree::NegInfinity => None,
            PerverseDegree::Finite(v) => Some(v),
        }
    }

    /// Comparison with an integer bound.
    pub fn at_most(self, bound: i64) -> bool {
        self <= PerverseDegree::Finite(bound)
    }
}

/// `‖σ‖_ℓ`: dimension of the part of `s` lying in the skeleton `X_{n−ℓ}`.
pub fn perverse_degree(x: &FilteredComplex, s: &[u32], codim: usize) -> PerverseDegree {
    let n = x.formal_dim();
    if codim > n {
        return PerverseDegree::NegInfinity;
    }
    let count = s.iter().filter(|&&v| x.level(v) <= n - codim).count();
    if count == 0 {
        PerverseDegree::NegInfinity
    } else {
        PerverseDegree::Finite(count as i64 - 1)
    }
}

/// `‖σ‖_S ≤ dim σ − codim S + p(S)` for every singular stratum met by `s`.
///
/// `p` holds resolved perversity values indexed by stratum position.
pub fn is_allowable_resolved(x: &FilteredComplex, s: &[u32], p: &[i64]) -> bool {
    let n = x.formal_dim();
    let dim = s.len() as i64 - 1;
    let mut below = 0i64;
    let mut k = 0;
    while k < s.len() {
        let level = x.level(s[k]);
        let start = k;
        while k < s.len() && x.level(s[k]) == level {
            k += 1;
        }
        below += (k - start) as i64;
        if level < n {
            let stratum = x.stratum_of(&s[start..k]);
            if below - 1 > dim - (n - level) as i64 + p[stratum] {
                return false;
            }
        }
    }
    true
}

pub fn is_allowable(x: &FilteredComplex, s: &[u32], p: &Perversity) -> Result<bool, Error> {
    Ok(is_allowable_resolved(x, s, &p.resolve(x)?))
}

/// Whether every simplex in the support of a `k`-chain is allowable.
pub fn chain_is_allowable(x: &FilteredComplex, k: usize, chain: &SparseVec, p: &[i64]) -> bool {
    chain
        .iter()
        .all(|(i, _)| is_allowable_resolved(x, x.simplex(k, i), p))
}

/// Splits `∂s` into the part on regular faces and the part on the others.
pub fn boundary_split(x: &FilteredComplex, ring: Ring, s: &[u32]) -> (SparseVec, SparseVec) {
    let k = s.len() - 1;
    let mut reg = Vec::new();
    let mut sing = Vec::new();
    if k == 0 {
        return (SparseVec::new(), SparseVec::new());
    }
    for i in 0..s.len() {
        let mut f = s.to_vec();
        f.remove(i);
        let idx = x.find(&f).expect("complex is closed under faces");
        let sign = if i % 2 == 0 { 1 } else { -1 };
        if x.is_regular(&f) {
            reg.push((idx, sign));
        } else {
            sing.push((idx, sign));
        }
    }
    (
        SparseVec::from_entries(ring, reg),
        SparseVec::from_entries(ring, sing),
    )
}

/// `∂_reg : C_k → C_{k−1}`: the boundary with non-regular faces dropped.
pub fn regular_boundary_matrix(x: &FilteredComplex, ring: Ring, k: usize) -> SparseMatrix {
    let full = x.boundary_matrix(ring, k);
    if k == 0 {
        return full;
    }
    let regular: Vec<bool> = x.simplices(k - 1).iter().map(|f| x.is_regular(f)).collect();
    let cols = full
        .into_columns()
        .into_iter()
        .map(|c| SparseVec::from_sorted(c.iter().filter(|&(i, _)| regular[i]).collect()))
        .collect();
    SparseMatrix::from_columns(x.count(k - 1), cols)
}

fn allowable_masks(x: &FilteredComplex, p: &[i64], regular_only: bool) -> Vec<Vec<bool>> {
    (0..=x.dim())
        .map(|k| {
            x.simplices(k)
                .iter()
                .map(|s| (!regular_only || x.is_regular(s)) && is_allowable_resolved(x, s, p))
                .collect()
        })
        .collect()
}

fn presentation(
    x: &FilteredComplex,
    ring: Ring,
    matrices: Vec<SparseMatrix>,
    masks: Vec<Vec<bool>>,
) -> Result<ChainComplexPresentation, Error> {
    let modules = (0..=x.dim())
        .map(|k| {
            let domain: Vec<usize> = (0..x.count(k)).filter(|&i| masks[k][i]).collect();
            let allowed: Vec<bool> = if k == 0 {
                Vec::new()
            } else {
                masks[k - 1].clone()
            };
            saturated_submodule_basis(ring, &matrices[k], &domain, &allowed)
        })
        .collect();
    ChainComplexPresentation::restrict(ring, Grading::Homological, &matrices, modules)
}

/// Intersection chains: allowable chains with allowable boundary.
pub fn intersection_complex(
    x: &FilteredComplex,
    p: &Perversity,
    coeff: CoefficientRing,
) -> Result<ChainComplexPresentation, Error> {
    let ring = coeff.engine();
    let resolved = p.resolve(x)?;
    let matrices = (0..=x.dim()).map(|k| x.boundary_matrix(ring, k)).collect();
    presentation(x, ring, matrices, allowable_masks(x, &resolved, false))
}

/// Tame intersection chains: regular allowable chains whose regular boundary
/// is allowable, with differential `∂_reg`.
pub fn tame_complex(
    x: &FilteredComplex,
    p: &Perversity,
    coeff: CoefficientRing,
) -> Result<ChainComplexPresentation, Error> {
    let ring = coeff.engine();
    let resolved = p.resolve(x)?;
    let matrices = (0..=x.dim())
        .map(|k| regular_boundary_matrix(x, ring, k))
        .collect();
    presentation(x, ring, matrices, allowable_masks(x, &resolved, true))
}

/// Ordinary simplicial chains of the whole complex.
pub fn simplicial_complex(
    x: &FilteredComplex,
    coeff: CoefficientRing,
) -> Result<ChainComplexPresentation, Error> {
    intersection_complex(
        x,
        &Perversity::Codim {
            values: (0..=x.formal_dim()).map(|c| c as i64).collect(),
        },
        coeff,
    )
}

//! Cup and cap products on blown-up cochains, and the comparison map χ.
//!
//! Cochains of degree `k` are sparse vectors over
//! [`BlowupComplex::cells_of_degree`]`(k)`; chains are sparse vectors over
//! the simplices of one dimension.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Ring, SparseMatrix, SparseVec};
use crate::blowup::{BlowupComplex, CellFactors};

/// Ordered vertex list of a cone factor `(F, ε)`; `None` stands for the apex.
fn factor_list(f: &CellFactors, i: usize) -> Vec<Option<u32>> {
    let mut l: Vec<Option<u32>> = f.vertices[i].iter().map(|&v| Some(v)).collect();
    if f.cone[i] {
        l.push(None);
    }
    l
}

fn from_lists(lists: &[Vec<Option<u32>>]) -> CellFactors {
    let n = lists.len() - 1;
    let vertices = lists
        .iter()
        .map(|l| l.iter().flatten().copied().collect())
        .collect();
    let cone = lists
        .iter()
        .enumerate()
        .map(|(i, l)| i < n && l.last() == Some(&None))
        .collect();
    CellFactors { vertices, cone }
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// Splits `1_c = Σ ± 1_a ∪ 1_b` with `|a| = k`: `(front, back, sign)` cells.
pub fn cup_splits(b: &BlowupComplex, c: usize, k: usize) -> Vec<(usize, usize, i64)> {
    let f = b.factors(c);
    let n = f.vertices.len() - 1;
    let lists: Vec<Vec<Option<u32>>> = (0..=n).map(|i| factor_list(&f, i)).collect();
    let mut out = Vec::new();
    let mut cuts = vec![0usize; n + 1];
    split_rec(b, &lists, k as i64, 0, &mut cuts, &mut out);
    out
}

fn split_rec(
    b: &BlowupComplex,
    lists: &[Vec<Option<u32>>],
    remaining: i64,
    i: usize,
    cuts: &mut Vec<usize>,
    out: &mut Vec<(usize, usize, i64)>,
) {
    if i == lists.len() {
        if remaining != 0 {
            return;
        }
        let fronts: Vec<Vec<Option<u32>>> = lists
            .iter()
            .zip(cuts.iter())
            .map(|(l, &t)| l[..=t].to_vec())
            .collect();
        let backs: Vec<Vec<Option<u32>>> = lists
            .iter()
            .zip(cuts.iter())
            .map(|(l, &t)| l[t..].to_vec())
            .collect();
        let da: Vec<i64> = cuts.iter().map(|&t| t as i64).collect();
        let db: Vec<i64> = lists
            .iter()
            .zip(cuts.iter())
            .map(|(l, &t)| (l.len() - 1 - t) as i64)
            .collect();
        let mut parity: i64 = da.iter().zip(&db).map(|(a, b)| a * b).sum();
        let mut left_b = 0;
        for j in 0..lists.len() {
            parity += da[j] * left_b;
            left_b += db[j];
        }
        let a = b
            .find_cell(&from_lists(&fronts))
            .expect("front face of a cell");
        let c = b
            .find_cell(&from_lists(&backs))
            .expect("back face of a cell");
        out.push((a, c, if odd(parity) { -1 } else { 1 }));
        return;
    }
    let len = lists[i].len();
    for t in 0..len {
        let t_i = t as i64;
        if t_i > remaining {
            break;
        }
        cuts[i] = t;
        split_rec(b, lists, remaining - t_i, i + 1, cuts, out);
    }
}

/// `ω ∪ η` for `ω` of degree `k` and `η` of degree `l`.
pub fn cup(b: &BlowupComplex, k: usize, omega: &SparseVec, l: usize, eta: &SparseVec) -> SparseVec {
    let ring = b.ring();
    if omega.is_zero() || eta.is_zero() {
        return SparseVec::new();
    }
    let entries = b
        .cells_of_degree(k + l)
        .iter()
        .enumerate()
        .filter_map(|(pos, &c)| {
            let mut v = 0;
            for (fa, fb, s) in cup_splits(b, c, k) {
                let x = ring.mul(omega.get(b.position(fa)), eta.get(b.position(fb)));
                if x != 0 {
                    v = ring.add(v, ring.mul(x, s));
                }
            }
            (v != 0).then_some((pos, v))
        })
        .collect();
    SparseVec::from_sorted(entries)
}

/// Cochain of degree `0` equal to `1` on every cell, the unit for `∪`.
pub fn unit(b: &BlowupComplex) -> SparseVec {
    SparseVec::from_sorted((0..b.cells_of_degree(0).len()).map(|i| (i, 1)).collect())
}

/// Per-level choice in a cap: front vertex list, its degree, back vertices.
type CapOption = (Vec<Option<u32>>, i64, Vec<u32>);

/// Front cells of a regular simplex `σ` of dimension `dim`, with `1_c ∩ σ`
/// as `(cell, sign, back simplex)`. Only cells of degree `k` are listed.
pub fn cap_terms(
    b: &BlowupComplex,
    k: usize,
    dim: usize,
    sigma: usize,
) -> Vec<(usize, i64, usize)> {
    let x = b.space();
    let n = x.formal_dim();
    let s = x.simplex(dim, sigma);
    let mut delta: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for &v in s {
        delta[x.level(v)].push(v);
    }
    // Options per level: (front, degree, back) as vertex lists.
    let options: Vec<Vec<CapOption>> = (0..=n)
        .map(|i| {
            let d = &delta[i];
            let mut opts = Vec::new();
            if i < n {
                let mut whole: Vec<Option<u32>> = d.iter().map(|&v| Some(v)).collect();
                whole.push(None);
                opts.push((whole, d.len() as i64, Vec::new()));
            }
            for r in 1..=d.len() {
                let front = d[..r].iter().map(|&v| Some(v)).collect();
                opts.push((front, r as i64 - 1, d[r - 1..].to_vec()));
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n + 1];
    cap_rec(b, &delta, &options, k as i64, 0, &mut choice, dim, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn cap_rec(
    b: &BlowupComplex,
    delta: &[Vec<u32>],
    options: &[Vec<CapOption>],
    remaining: i64,
    i: usize,
    choice: &mut Vec<usize>,
    dim: usize,
    out: &mut Vec<(usize, i64, usize)>,
) {
    let n = options.len() - 1;
    if i > n {
        if remaining != 0 {
            return;
        }
        let fronts: Vec<Vec<Option<u32>>> =
            (0..=n).map(|j| options[j][choice[j]].0.clone()).collect();
        let degrees: Vec<i64> = (0..=n).map(|j| options[j][choice[j]].1).collect();
        let mut nu = 0i64;
        for j in 0..n {
            let above: i64 = degrees[j + 1..].iter().sum();
            nu += delta[j].len() as i64 * above;
        }
        let cell = b
            .find_cell(&from_lists(&fronts))
            .expect("front face of a regular simplex");
        let mut back: Vec<u32> = (0..=n)
            .flat_map(|j| options[j][choice[j]].2.iter().copied())
            .collect();
        back.sort_unstable();
        let target = b.space().find(&back).expect("back face of a simplex");
        debug_assert_eq!(back.len() + k_of(&degrees), dim + 1);
        out.push((cell, if odd(nu) { -1 } else { 1 }, target));
        return;
    }
    for (o, opt) in options[i].iter().enumerate() {
        if opt.1 > remaining {
            continue;
        }
        choice[i] = o;
        cap_rec(
            b,
            delta,
            options,
            remaining - opt.1,
            i + 1,
            choice,
            dim,
            out,
        );
    }
}

fn k_of(degrees: &[i64]) -> usize {
    degrees.iter().sum::<i64>() as usize
}

/// `ω ∩ ξ` for `ω` of degree `k` and a chain `ξ` of dimension `dim`.
///
/// Non-regular simplices of `ξ` contribute nothing.
pub fn cap(
    b: &BlowupComplex,
    k: usize,
    omega: &SparseVec,
    dim: usize,
    xi: &SparseVec,
) -> SparseVec {
    let ring = b.ring();
    let x = b.space();
    if k > dim {
        return SparseVec::new();
    }
    let mut acc = Vec::new();
    for (s, c) in xi.iter() {
        if !x.is_regular(x.simplex(dim, s)) {
            continue;
        }
        for (cell, sign, target) in cap_terms(b, k, dim, s) {
            let w = omega.get(b.position(cell));
            if w != 0 {
                acc.push((target, ring.mul(ring.mul(w, c), sign)));
            }
        }
    }
    SparseVec::from_entries(ring, acc)
}

/// Matrix of `ω ↦ ω ∩ ξ` from degree-`k` cochains to `(dim − k)`-chains.
pub fn cap_matrix(b: &BlowupComplex, k: usize, dim: usize, xi: &SparseVec) -> SparseMatrix {
    let ring = b.ring();
    let x = b.space();
    let ncols = b.cells_of_degree(k).len();
    let nrows = if k <= dim { x.count(dim - k) } else { 0 };
    let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ncols];
    if k <= dim {
        for (s, c) in xi.iter() {
            if !x.is_regular(x.simplex(dim, s)) {
                continue;
            }
            for (cell, sign, target) in cap_terms(b, k, dim, s) {
                cols[b.position(cell)].push((target, ring.mul(c, sign)));
            }
        }
    }
    SparseMatrix::from_columns(
        nrows,
        cols.into_iter()
            .map(|e| SparseVec::from_entries(ring, e))
            .collect(),
    )
}

/// The cell `(σ, ε ≡ 1)` whose cochain pairs with the fundamental chain of
/// the blow-up of `σ`.
pub fn top_cell(b: &BlowupComplex, dim: usize, sigma: usize) -> Option<usize> {
    b.cells_of_simplex(dim, sigma).map(|r| r.end - 1)
}

/// Sign of evaluating a tensor cochain on `cΔ_0 ⊗ ⋯ ⊗ Δ_n`:
/// `(−1)^{Σ_{i<j} d_i d_j}` with `d_i` the factor degrees of the top cell.
pub fn evaluation_sign(b: &BlowupComplex, dim: usize, sigma: usize) -> i64 {
    let x = b.space();
    let n = x.formal_dim();
    let mut counts = vec![0i64; n + 1];
    for &v in x.simplex(dim, sigma) {
        counts[x.level(v)] += 1;
    }
    counts[n] -= 1;
    let mut parity = 0;
    let mut left = 0;
    for d in counts {
        parity += left * d;
        left += d;
    }
    if odd(parity) {
        -1
    } else {
        1
    }
}

/// `χ(ω)` as a cochain on the `k`-simplices: `ω` evaluated on the
/// fundamental chain of the blow-up of each regular simplex, zero on the
/// others. With the coboundary convention of this crate,
/// `χ(δω) = (−1)^{k+1} χ(ω) ∘ ∂` on intersection cochains.
pub fn chi(b: &BlowupComplex, k: usize, omega: &SparseVec) -> SparseVec {
    let x = b.space();
    if k > x.dim() {
        return SparseVec::new();
    }
    let entries = (0..x.count(k))
        .filter_map(|s| {
            let c = top_cell(b, k, s)?;
            let v = omega.get(b.position(c));
            (v != 0).then(|| (s, b.ring().mul(v, evaluation_sign(b, k, s))))
        })
        .collect();
    SparseVec::from_sorted(entries)
}

/// Matrix of [`chi`] in degree `k`.
pub fn chi_matrix(b: &BlowupComplex, k: usize) -> SparseMatrix {
    let x = b.space();
    let nrows = if k <= x.dim() { x.count(k) } else { 0 };
    let mut cols = vec![SparseVec::new(); b.cells_of_degree(k).len()];
    for s in 0..nrows {
        if let Some(c) = top_cell(b, k, s) {
            cols[b.position(c)] =
                SparseVec::from_sorted(vec![(s, b.ring().from_int(evaluation_sign(b, k, s)))]);
        }
    }
    SparseMatrix::from_columns(nrows, cols)
}

/// Sum of coefficients of a `0`-chain.
pub fn augmentation(ring: Ring, chain: &SparseVec) -> i64 {
    chain.iter().fold(0, |acc, (_, v)| ring.add(acc, v))
}

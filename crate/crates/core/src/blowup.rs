//! Blown-up cochains.
//!
//! For a regular simplex `Δ = Δ_0 ∗ ⋯ ∗ Δ_n` the local complex is
//! `Ñ*(Δ) = N*(cΔ_0) ⊗ ⋯ ⊗ N*(cΔ_{n−1}) ⊗ N*(Δ_n)`, where the cone
//! `cΔ_i = Δ_i ∗ [v]` has its apex as last vertex. A basis element is a
//! tensor `1_{(F_0,ε_0)} ⊗ ⋯ ⊗ 1_{F_n}`.
//!
//! Coboundaries use `δ 1_G = −(−1)^{|G|} Σ_H [H : G] 1_H` on each factor,
//! where `[H : G]` is the incidence number of `G` in `∂H`, and the Koszul
//! rule on tensors. With this convention the cap product satisfies
//! `∂(ω ∩ ξ) = (δω) ∩ ξ + (−1)^{|ω|} ω ∩ ∂ξ` for the front-face cap.
//!
//! A global cochain assigns to each regular simplex a local cochain, and
//! these must agree under restriction to regular faces. Restriction sends
//! `1_{(F,ε)}` to itself when every `F_i` lies in the face and to zero
//! otherwise, so global cochains are exactly functions on *cells*: pairs of
//! a regular simplex `τ = F_0 ∪ ⋯ ∪ F_n` and a choice of `ε_i` for each
//! singular level occupied by `τ`. [`BlowupComplex`] works in this basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    saturated_submodule_basis, ChainComplex, ChainComplexPresentation, CoefficientRing, Grading,
    Ring, SparseMatrix, SparseVec, Submodule,
};
use crate::error::Error;
use crate::filtered_complex::{FilteredComplex, JoinDecomposition};
use crate::intersection_chains::PerverseDegree;
use crate::perversity::Perversity;

/// Face of a cone `cΔ_i`: a subset of `Δ_i` (bitmask over its vertices,
/// in order) and whether the apex is included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeFace {
    pub face: u32,
    pub cone: bool,
}

impl ConeFace {
    pub const APEX: ConeFace = ConeFace {
        face: 0,
        cone: true,
    };

    pub fn new(face: u32, cone: bool) -> Self {
        ConeFace { face, cone }
    }

    /// `dim F + ε` with `dim ∅ = −1`.
    pub fn dim(self) -> i64 {
        self.face.count_ones() as i64 + self.cone as i64 - 1
    }

    pub fn is_empty(self) -> bool {
        self.face == 0 && !self.cone
    }
}

/// Incidence sign `(−1)^{position of the new vertex}` when adding the
/// vertex at bit `bit` to `face` (the apex, being last, sits after it).
fn insertion_sign(face: u32, bit: u32) -> bool {
    (face & ((1u32 << bit) - 1)).count_ones() % 2 == 1
}

/// Cofaces of a factor face inside `cΔ` (or `Δ` when `cone_factor` is
/// false), with the parity of the incidence number `[H : G]`.
fn factor_cofaces(g: ConeFace, size: u32, cone_factor: bool) -> Vec<(ConeFace, bool)> {
    let mut out = Vec::new();
    for bit in 0..size {
        if g.face >> bit & 1 == 0 {
            out.push((
                ConeFace::new(g.face | 1 << bit, g.cone),
                insertion_sign(g.face, bit),
            ));
        }
    }
    if cone_factor && !g.cone {
        out.push((ConeFace::new(g.face, true), g.face.count_ones() % 2 == 1));
    }
    out
}

/// Faces of a factor face (nonempty ones), with the parity of `[G : H]`.
fn factor_faces(g: ConeFace) -> Vec<(ConeFace, bool)> {
    let mut out = Vec::new();
    if g.dim() == 0 {
        return out;
    }
    let mut pos = 0;
    for bit in 0..32 {
        if g.face >> bit & 1 == 1 {
            out.push((ConeFace::new(g.face & !(1 << bit), g.cone), pos % 2 == 1));
            pos += 1;
        }
    }
    if g.cone {
        out.push((ConeFace::new(g.face, false), pos % 2 == 1));
    }
    out
}

/// Basis element `1_{(F,ε)}` of a local blown-up complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlowupElement {
    /// One face per level `0..=n`; the last has `cone == false`.
    pub factors: Vec<ConeFace>,
}

impl BlowupElement {
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.dim()).sum()
    }

    /// `|1_{(F,ε)}|_{>s}`.
    pub fn degree_above(&self, s: usize) -> i64 {
        self.factors[s + 1..].iter().map(|f| f.dim()).sum()
    }

    /// `ℓ`-perverse degree, `1 ≤ ℓ ≤ n`.
    pub fn perverse_degree(&self, codim: usize) -> PerverseDegree {
        let n = self.factors.len() - 1;
        assert!((1..=n).contains(&codim), "perverse degree needs 1 ≤ ℓ ≤ n");
        let i = n - codim;
        if self.factors[i].cone {
            PerverseDegree::NegInfinity
        } else {
            PerverseDegree::Finite(self.degree_above(i))
        }
    }
}

/// Perverse degree of a sum of basis elements: the maximum over the
/// support, `−∞` for zero.
pub fn cochain_perverse_degree<'a>(
    elements: impl IntoIterator<Item = &'a BlowupElement>,
    codim: usize,
) -> PerverseDegree {
    elements
        .into_iter()
        .map(|e| e.perverse_degree(codim))
        .max()
        .unwrap_or(PerverseDegree::NegInfinity)
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Local blown-up complex of one regular join `Δ_0 ∗ ⋯ ∗ Δ_n`, together
/// with the tensor chain complex `N_*(cΔ_0) ⊗ ⋯ ⊗ N_*(Δ_n)` on the same
/// basis.
#[derive(Clone, Debug)]
pub struct LocalBlowup {
    decomposition: JoinDecomposition,
    elements: Vec<BlowupElement>,
}

impl LocalBlowup {
    pub fn new(decomposition: JoinDecomposition) -> Self {
        assert!(
            decomposition.is_regular(),
            "local blow-up needs a regular simplex"
        );
        let n = decomposition.dims.len() - 1;
        let mut elements = vec![BlowupElement {
            factors: Vec::new(),
        }];
        for i in 0..=n {
            let size = decomposition.count(i) as u32;
            let mut options = Vec::new();
            for face in 0..(1u32 << size) {
                if i < n {
                    if face != 0 {
                        options.push(ConeFace::new(face, false));
                    }
                    options.push(ConeFace::new(face, true));
                } else if face != 0 {
                    options.push(ConeFace::new(face, false));
                }
            }
            elements = elements
                .into_iter()
                .flat_map(|e| {
                    options.iter().map(move |&o| {
                        let mut f = e.factors.clone();
                        f.push(o);
                        BlowupElement { factors: f }
                    })
                })
                .collect();
        }
        elements.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        LocalBlowup {
            decomposition,
            elements,
        }
    }

    pub fn decomposition(&self) -> &JoinDecomposition {
        &self.decomposition
    }

    pub fn formal_dim(&self) -> usize {
        self.decomposition.dims.len() - 1
    }

    pub fn elements(&self) -> &[BlowupElement] {
        &self.elements
    }

    pub fn index(&self, e: &BlowupElement) -> Option<usize> {
        self.elements
            .binary_search_by(|x| x.degree().cmp(&e.degree()).then_with(|| x.cmp(e)))
            .ok()
    }

    /// Basis elements of degree `k`.
    pub fn basis(&self, k: i64) -> impl Iterator<Item = (usize, &BlowupElement)> {
        self.elements
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.degree() == k)
    }

    /// Coboundary on the whole basis (square matrix, all degrees).
    pub fn coboundary(&self, ring: Ring) -> SparseMatrix {
        let n = self.formal_dim();
        let cols = self
            .elements
            .iter()
            .map(|e| {
                let mut entries = Vec::new();
                let mut koszul = 0i64;
                for i in 0..=n {
                    let g = e.factors[i];
                    let size = self.decomposition.count(i) as u32;
                    for (h, odd) in factor_cofaces(g, size, i < n) {
                        let mut f = e.factors.clone();
                        f[i] = h;
                        let parity = koszul + 1 + g.dim() + odd as i64;
                        let idx = self
                            .index(&BlowupElement { factors: f })
                            .expect("coface in basis");
                        entries.push((idx, sign(parity % 2 != 0)));
                    }
                    koszul += g.dim();
                }
                SparseVec::from_entries(ring, entries)
            })
            .collect();
        SparseMatrix::from_columns(self.elements.len(), cols)
    }

    /// Boundary of the tensor chain complex on the same basis.
    pub fn tensor_boundary(&self, ring: Ring) -> SparseMatrix {
        let n = self.formal_dim();
        let cols = self
            .elements
            .iter()
            .map(|e| {
                let mut entries = Vec::new();
                let mut koszul = 0i64;
                for i in 0..=n {
                    let g = e.factors[i];
                    for (h, odd) in factor_faces(g) {
                        if i == n && h.face == 0 {
                            continue;
                        }
                        let mut f = e.factors.clone();
                        f[i] = h;
                        let idx = self
                            .index(&BlowupElement { factors: f })
                            .expect("face in basis");
                        entries.push((idx, sign((koszul + odd as i64) % 2 != 0)));
                    }
                    koszul += g.dim();
                }
                SparseVec::from_entries(ring, entries)
            })
            .collect();
        SparseMatrix::from_columns(self.elements.len(), cols)
    }

    /// Sign exponent `ν(F, ε, Δ) = Σ_{j<n} (dim Δ_j + 1) Σ_{i>j} |(F_i, ε_i)|`.
    pub fn nu(&self, e: &BlowupElement) -> i64 {
        let n = self.formal_dim();
        (0..n)
            .map(|j| (self.decomposition.dims[j] + 1) * e.degree_above(j))
            .sum()
    }

    /// `1_{(F,ε)} ∩̃ Δ̃`: factorwise front-face caps against `cΔ_0 ⊗ ⋯ ⊗ Δ_n`,
    /// with sign `(−1)^ν`. Returns the resulting tensor basis element.
    pub fn tilde_cap(&self, e: &BlowupElement) -> Option<(i64, BlowupElement)> {
        let n = self.formal_dim();
        let mut back = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let size = self.decomposition.count(i) as u32;
            let full = (1u32 << size) - 1;
            let g = e.factors[i];
            let b = if i < n && g.cone {
                // Only the whole cone is a front face containing the apex.
                if g.face != full {
                    return None;
                }
                ConeFace::APEX
            } else {
                // Front face [e_0, …, e_r] leaves the back face [e_r, …].
                let r = g.face.count_ones();
                if r == 0 || g.face != (1u32 << r) - 1 {
                    return None;
                }
                let tail = full & !((1u32 << (r - 1)) - 1);
                ConeFace::new(tail, i < n)
            };
            back.push(b);
        }
        Some((sign(self.nu(e) % 2 != 0), BlowupElement { factors: back }))
    }

    /// Blow-down `μ_Δ` of a tensor basis chain, as a face of `Δ` given by a
    /// bitmask over the vertices of `Δ` in order.
    pub fn mu(&self, e: &BlowupElement) -> Option<u64> {
        let n = self.formal_dim();
        let l = (0..=n)
            .find(|&j| j == n || !e.factors[j].cone)
            .expect("level n has ε = 0");
        let join_dim: i64 = e.factors[..=l]
            .iter()
            .map(|f| f.face.count_ones() as i64)
            .sum::<i64>()
            - 1;
        if e.degree() != join_dim {
            return None;
        }
        let mut mask = 0u64;
        let mut offset = 0;
        for i in 0..=n {
            if i <= l {
                mask |= (e.factors[i].face as u64) << offset;
            }
            offset += self.decomposition.count(i);
        }
        Some(mask)
    }

    /// Local cap `ω ∩ Δ = μ(ω ∩̃ Δ̃)` of a basis element, as a signed face.
    pub fn cap(&self, e: &BlowupElement) -> Option<(i64, u64)> {
        let (s, b) = self.tilde_cap(e)?;
        Some((s, self.mu(&b)?))
    }
}

/// Boundary of a face of `Δ` given as a bitmask: `(face, sign)` pairs.
pub fn simplex_boundary(mask: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    if mask.count_ones() <= 1 {
        return out;
    }
    let mut pos = 0;
    for bit in 0..64 {
        if mask >> bit & 1 == 1 {
            out.push((mask & !(1 << bit), sign(pos % 2 == 1)));
            pos += 1;
        }
    }
    out
}

/// A global basis cell: a regular simplex and the cone flags `ε_i` of its
/// occupied singular levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub dim: usize,
    pub simplex: usize,
    /// Bit `b` is `ε` of the `b`-th occupied singular level.
    pub mask: u32,
}

/// Factor data of a cell: per level `0..=n`, the vertices of `F_i` (the
/// whole `Δ_i` of the support) and `ε_i` (`true` for unoccupied levels
/// below `n`, `false` at level `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFactors {
    pub vertices: Vec<Vec<u32>>,
    pub cone: Vec<bool>,
}

impl CellFactors {
    pub fn degree(&self, i: usize) -> i64 {
        self.vertices[i].len() as i64 + self.cone[i] as i64 - 1
    }

    pub fn total_degree(&self) -> i64 {
        (0..self.vertices.len()).map(|i| self.degree(i)).sum()
    }

    pub fn support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.vertices.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }
}

/// The global blown-up cochain complex `Ñ*(X)` in the cell basis.
#[derive(Clone, Debug)]
pub struct BlowupComplex {
    x: FilteredComplex,
    ring: Ring,
    cells: Vec<Cell>,
    first_cell: Vec<Vec<usize>>,
    degree_of: Vec<usize>,
    position: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    complex: ChainComplex,
}

const NO_CELL: usize = usize::MAX;

impl BlowupComplex {
    pub fn new(x: &FilteredComplex, coeff: CoefficientRing) -> Self {
        let ring = coeff.engine();
        let n = x.formal_dim();
        let mut cells = Vec::new();
        let mut first_cell = Vec::with_capacity(x.dim() + 1);
        for k in 0..=x.dim() {
            let mut firsts = Vec::with_capacity(x.count(k));
            for (i, s) in x.simplices(k).iter().enumerate() {
                if !x.is_regular(s) {
                    firsts.push(NO_CELL);
                    continue;
                }
                firsts.push(cells.len());
                let occupied = occupied_singular_levels(x, s).len();
                for mask in 0..(1u32 << occupied) {
                    cells.push(Cell {
                        dim: k,
                        simplex: i,
                        mask,
                    });
                }
            }
            first_cell.push(firsts);
        }
        let mut degree_of = Vec::with_capacity(cells.len());
        let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        let mut position = Vec::with_capacity(cells.len());
        for (id, c) in cells.iter().enumerate() {
            let occupied = occupied_singular_levels(x, x.simplex(c.dim, c.simplex)).len() as u32;
            let zeros = occupied - c.mask.count_ones();
            let d = c.dim - zeros as usize;
            degree_of.push(d);
            position.push(by_degree[d].len());
            by_degree[d].push(id);
        }
        let mut this = BlowupComplex {
            x: x.clone(),
            ring,
            cells,
            first_cell,
            degree_of,
            position,
            by_degree,
            complex: ChainComplex::new(Grading::Cohomological, Vec::new(), Vec::new()),
        };
        let ranks: Vec<usize> = this.by_degree.iter().map(Vec::len).collect();
        let differentials = (0..=n)
            .map(|k| {
                let rows = if k < n { ranks[k + 1] } else { 0 };
                let cols = this.by_degree[k]
                    .iter()
                    .map(|&c| {
                        if k == n {
                            return SparseVec::new();
                        }
                        SparseVec::from_entries(
                            ring,
                            this.coboundary_of_cell(c)
                                .into_iter()
                                .map(|(t, v)| (this.position[t], v)),
                        )
                    })
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            })
            .collect();
        this.complex = ChainComplex::new(Grading::Cohomological, ranks, differentials);
        this
    }

    pub fn space(&self) -> &FilteredComplex {
        &self.x
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, id: usize) -> Cell {
        self.cells[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.degree_of[id]
    }

    /// Index of a cell inside its degree.
    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }

    /// Cell ids of degree `k`, in basis order.
    pub fn cells_of_degree(&self, k: usize) -> &[usize] {
        self.by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn factors(&self, id: usize) -> CellFactors {
        let c = self.cells[id];
        let s = self.x.simplex(c.dim, c.simplex);
        let n = self.x.formal_dim();
        let mut vertices = vec![Vec::new(); n + 1];
        for &v in s {
            vertices[self.x.level(v)].push(v);
        }
        let mut cone = vec![true; n + 1];
        cone[n] = false;
        let mut bit = 0;
        for i in 0..n {
            if !vertices[i].is_empty() {
                cone[i] = c.mask >> bit & 1 == 1;
                bit += 1;
            }
        }
        CellFactors { vertices, cone }
    }

    /// Cell with the given factors, if its support is a simplex of `X`.
    pub fn find_cell(&self, f: &CellFactors) -> Option<usize> {
        let support = f.support();
        let idx = self.x.find(&support)?;
        let k = support.len() - 1;
        let first = self.first_cell[k][idx];
        if first == NO_CELL {
            return None;
        }
        let n = self.x.formal_dim();
        let mut mask = 0u32;
        let mut bit = 0;
        for i in 0..n {
            if !f.vertices[i].is_empty() {
                mask |= (f.cone[i] as u32) << bit;
                bit += 1;
            }
        }
        Some(first + mask as usize)
    }

    /// Cells `(τ, ε)` of a regular simplex `τ`, as a range of cell ids.
    pub fn cells_of_simplex(&self, k: usize, idx: usize) -> Option<core::ops::Range<usize>> {
        let first = self.first_cell[k][idx];
        if first == NO_CELL {
            return None;
        }
        let occ = occupied_singular_levels(&self.x, self.x.simplex(k, idx)).len();
        Some(first..first + (1 << occ))
    }

    /// `δ 1_c` as `(cell id, coefficient)` pairs.
    fn coboundary_of_cell(&self, id: usize) -> Vec<(usize, i64)> {
        let n = self.x.formal_dim();
        let f = self.factors(id);
        let c = self.cells[id];
        let mut out = Vec::new();
        let mut koszul = vec![0i64; n + 2];
        for i in 0..=n {
            koszul[i + 1] = koszul[i] + f.degree(i);
        }
        // Adding the apex to an occupied factor with ε = 0.
        for (i, vs) in f.vertices.iter().enumerate().take(n) {
            if !vs.is_empty() && !f.cone[i] {
                let mut g = f.clone();
                g.cone[i] = true;
                let parity = koszul[i] + 1 + f.degree(i) + vs.len() as i64;
                out.push((
                    self.find_cell(&g).expect("same support"),
                    sign(parity % 2 != 0),
                ));
            }
        }
        // Adding a vertex: move to a cofacet of the support.
        for &up in self.x.cofacets(c.dim, c.simplex) {
            let s = self.x.simplex(c.dim + 1, up);
            let w = *s
                .iter()
                .find(|v| !f.vertices[self.x.level(**v)].contains(v))
                .expect("cofacet adds a vertex");
            let j = self.x.level(w);
            let pos = f.vertices[j].iter().filter(|&&u| u < w).count() as i64;
            let mut g = f.clone();
            g.vertices[j].push(w);
            g.vertices[j].sort_unstable();
            let parity = koszul[j] + 1 + f.degree(j) + pos;
            out.push((
                self.find_cell(&g).expect("cofacet is regular"),
                sign(parity % 2 != 0),
            ));
        }
        out
    }

    /// Whether the cell is allowable for resolved perversity values `p`.
    pub fn cell_is_allowable(&self, id: usize, p: &[i64]) -> bool {
        let n = self.x.formal_dim();
        let f = self.factors(id);
        let c = self.cells[id];
        let s = self.x.simplex(c.dim, c.simplex);
        let mut above = f.total_degree();
        for i in 0..n {
            above -= f.degree(i);
            if !f.vertices[i].is_empty() && !f.cone[i] {
                let stratum = self.x.stratum_at(s, i).expect("occupied level");
                if above > p[stratum] {
                    return false;
                }
            }
        }
        true
    }

    /// Perverse degree `‖1_c‖_S` on the stratum at position `stratum`.
    pub fn cell_perverse_degree(&self, id: usize, stratum: usize) -> PerverseDegree {
        let st = &self.x.strata()[stratum];
        let f = self.factors(id);
        let c = self.cells[id];
        let s = self.x.simplex(c.dim, c.simplex);
        let i = st.level;
        if st.is_regular()
            || f.vertices[i].is_empty()
            || f.cone[i]
            || self.x.stratum_at(s, i) != Some(stratum)
        {
            return PerverseDegree::NegInfinity;
        }
        PerverseDegree::Finite((i + 1..=self.x.formal_dim()).map(|j| f.degree(j)).sum())
    }

    /// `Ñ*(X)` with the identity presentation.
    pub fn global_complex(&self) -> ChainComplexPresentation {
        ChainComplexPresentation {
            complex: self.complex.clone(),
            modules: self
                .complex
                .ranks()
                .iter()
                .map(|&r| Submodule::full(self.ring, r))
                .collect(),
        }
    }

    /// `Ñ*_p(X)`: cochains `ω` with `ω` and `δω` both `p`-allowable.
    pub fn perverse_subcomplex(&self, p: &Perversity) -> Result<ChainComplexPresentation, Error> {
        let resolved = p.resolve(&self.x)?;
        let n = self.x.formal_dim();
        let masks: Vec<Vec<bool>> = (0..=n)
            .map(|k| {
                self.by_degree[k]
                    .iter()
                    .map(|&c| self.cell_is_allowable(c, &resolved))
                    .collect()
            })
            .collect();
        let modules = (0..=n)
            .map(|k| {
                let domain: Vec<usize> = (0..masks[k].len()).filter(|&i| masks[k][i]).collect();
                let allowed = if k < n {
                    masks[k + 1].clone()
                } else {
                    Vec::new()
                };
                saturated_submodule_basis(
                    self.ring,
                    self.complex.differential(k),
                    &domain,
                    &allowed,
                )
            })
            .collect();
        ChainComplexPresentation::restrict(
            self.ring,
            Grading::Cohomological,
            self.complex.differentials(),
            modules,
        )
    }
}

/// Singular levels `< n` occupied by the simplex, increasing.
pub fn occupied_singular_levels(x: &FilteredComplex, s: &[u32]) -> Vec<usize> {
    let n = x.formal_dim();
    let mut out: Vec<usize> = s.iter().map(|&v| x.level(v)).filter(|&l| l < n).collect();
    out.dedup();
    out
}

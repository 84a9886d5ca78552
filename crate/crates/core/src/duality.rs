//! Orientations, fundamental cycles, Poincaré duality `ω ↦ ω ∩ γ` and the
//! cup pairing, plus the Witt condition on links.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    homology, induced_map, mapping_cone, ChainComplex, ChainComplexPresentation, CoefficientRing,
    DenseMatrix, Homology, HomologyGroup, HomologySummary, Ring, SparseMatrix, SparseVec,
};
use crate::blowup::BlowupComplex;
use crate::constructions::Space;
use crate::error::Error;
use crate::filtered_complex::FilteredComplex;
use crate::intersection_chains::tame_complex;
use crate::perversity::Perversity;
use crate::products::{augmentation, cap, cap_matrix, cup};

/// Checks purity and the two-cofaces condition on regular codimension-one
/// faces.
fn check_pseudomanifold(x: &FilteredComplex) -> Result<(), Error> {
    let n = x.formal_dim();
    if x.dim() != n {
        return Err(Error::NotPure(x.to_external(&x.maximal_simplices()[0])));
    }
    if let Some(s) = x.maximal_simplices().into_iter().find(|s| s.len() != n + 1) {
        return Err(Error::NotPure(x.to_external(&s)));
    }
    if n == 0 {
        return Ok(());
    }
    for (i, f) in x.simplices(n - 1).iter().enumerate() {
        let c = x.cofacets(n - 1, i).len();
        if c != 2 && x.is_regular(f) {
            return Err(Error::NotPseudomanifold {
                face: x.to_external(f),
                cofaces: c,
            });
        }
    }
    Ok(())
}

/// Coherent signs on the top simplices, found by walking the dual graph of
/// the regular part. Each component starts from its first simplex with
/// sign `+1`; supplied orientations are validated instead.
///
/// Over a ring of characteristic two every choice is coherent.
pub fn orient(x: &FilteredComplex, ring: Ring) -> Result<Vec<i64>, Error> {
    check_pseudomanifold(x)?;
    let n = x.formal_dim();
    let supplied = x.supplied_orientations();
    if !supplied.is_empty() {
        let mut signs = vec![0i64; x.count(n)];
        for (s, v) in supplied {
            let idx = x.find(s).ok_or_else(|| Error::NotPure(x.to_external(s)))?;
            signs[idx] = *v;
        }
        if let Some(i) = signs.iter().position(|&v| v == 0) {
            return Err(Error::IncoherentOrientation(x.to_external(x.simplex(n, i))));
        }
        if let Some(bad) = incoherent_face(x, &signs, ring) {
            return Err(Error::IncoherentOrientation(
                x.to_external(x.simplex(n - 1, bad)),
            ));
        }
        return Ok(signs);
    }
    if ring == Ring::PrimeField(2) || n == 0 {
        return Ok(vec![1; x.count(n)]);
    }
    let d = x.boundary_matrix(Ring::Integers, n);
    let mut faces_of: Vec<Vec<(usize, i64)>> = vec![Vec::new(); x.count(n)];
    let mut cofaces_of: Vec<Vec<(usize, i64)>> = vec![Vec::new(); x.count(n - 1)];
    for (t, col) in d.columns().iter().enumerate() {
        for (f, v) in col.iter() {
            if x.is_regular(x.simplex(n - 1, f)) {
                faces_of[t].push((f, v));
                cofaces_of[f].push((t, v));
            }
        }
    }
    let mut signs = vec![0i64; x.count(n)];
    for start in 0..signs.len() {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &(f, v) in &faces_of[t] {
                for &(u, w) in &cofaces_of[f] {
                    if u == t {
                        continue;
                    }
                    // signs[t]·v + signs[u]·w = 0.
                    let want = -signs[t] * v * w;
                    if signs[u] == 0 {
                        signs[u] = want;
                        queue.push_back(u);
                    } else if signs[u] != want {
                        return Err(Error::NonOrientable);
                    }
                }
            }
        }
    }
    Ok(signs)
}

fn incoherent_face(x: &FilteredComplex, signs: &[i64], ring: Ring) -> Option<usize> {
    let n = x.formal_dim();
    let d = x.boundary_matrix(ring, n);
    let gamma = SparseVec::from_entries(ring, signs.iter().enumerate().map(|(i, &s)| (i, s)));
    d.mul_vec(ring, &gamma)
        .iter()
        .map(|(f, _)| f)
        .find(|&f| x.is_regular(x.simplex(n - 1, f)))
}

/// `γ = Σ ±σ` over the top simplices; a cycle of the tame complex.
pub fn fundamental_cycle(x: &FilteredComplex, coeff: CoefficientRing) -> Result<SparseVec, Error> {
    coeff.validate()?;
    let ring = coeff.engine();
    let signs = orient(x, ring)?;
    let gamma = SparseVec::from_entries(ring, signs.iter().enumerate().map(|(i, &s)| (i, s)));
    if let Some(f) = incoherent_face(x, &signs, ring) {
        return Err(Error::IncoherentOrientation(
            x.to_external(x.simplex(x.formal_dim() - 1, f)),
        ));
    }
    Ok(gamma)
}

/// The duality map in one cohomological degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityDegree {
    pub k: usize,
    /// `ℋ^k_p̄`.
    pub source: HomologyGroup,
    /// `𝔉H^p̄_{n−k}`.
    pub target: HomologyGroup,
    /// Induced map on generators (torsion first over ℤ, free part only over ℚ).
    pub matrix: DenseMatrix,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub degrees: Vec<DualityDegree>,
    /// Whether `ω ↦ ω ∩ γ` is a quasi-isomorphism (its cone is acyclic).
    pub isomorphism: bool,
}

/// Blown-up complex, perverse cochains and tame chains for a pair of
/// perversities, shared by the duality and pairing computations.
pub struct DualitySetup {
    pub coeff: CoefficientRing,
    pub blowup: BlowupComplex,
    pub gamma: SparseVec,
}

impl DualitySetup {
    pub fn new(x: &FilteredComplex, coeff: CoefficientRing) -> Result<Self, Error> {
        coeff.validate()?;
        let gamma = fundamental_cycle(x, coeff)?;
        Ok(DualitySetup {
            coeff,
            blowup: BlowupComplex::new(x, coeff),
            gamma,
        })
    }

    fn ring(&self) -> Ring {
        self.coeff.engine()
    }

    fn n(&self) -> usize {
        self.blowup.space().formal_dim()
    }

    /// The matrices `f_j : Ñ^{n−j}_p̄ → 𝔉C^p̄_j` in presentation coordinates.
    pub fn cap_maps(
        &self,
        cochains: &ChainComplexPresentation,
        chains: &ChainComplexPresentation,
    ) -> Result<Vec<SparseMatrix>, Error> {
        let ring = self.ring();
        let n = self.n();
        (0..=n)
            .map(|j| {
                let m = cap_matrix(&self.blowup, n - j, n, &self.gamma);
                cochains.map_matrix(ring, n - j, chains, j, |g| m.mul_vec(ring, g))
            })
            .collect()
    }

    pub fn duality(&self, p: &Perversity) -> Result<DualityReport, Error> {
        let ring = self.ring();
        let n = self.n();
        let x = self.blowup.space();
        let cochains = self.blowup.perverse_subcomplex(p)?;
        let chains = tame_complex(x, p, self.coeff)?;
        let f = self.cap_maps(&cochains, &chains)?;
        let a = cochains.complex.reversed(n);
        let b = &chains.complex;
        let cone = mapping_cone(ring, &a, b, &f);
        let isomorphism = homology(&cone, self.coeff)?.is_acyclic();
        let ha = Homology::compute(ring, &a)?;
        let hb = Homology::compute(ring, b)?;
        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let j = n - k;
            let mut matrix = induced_map(&ha, &hb, j, j, &f[j])?;
            let (mut source, mut target) = (ha.group(j).clone(), hb.group(j).clone());
            if !self.coeff.reports_torsion() {
                let (ts, tt) = (source.torsion.len(), target.torsion.len());
                matrix = matrix.select(tt..matrix.rows(), ts..matrix.cols());
                source.torsion.clear();
                target.torsion.clear();
            }
            degrees.push(DualityDegree {
                k,
                source,
                target,
                matrix,
            });
        }
        Ok(DualityReport {
            degrees,
            isomorphism,
        })
    }

    /// Free cocycle representatives of `ℋ^k_p̄`, as cell vectors.
    pub fn free_classes(&self, p: &Perversity, k: usize) -> Result<Vec<SparseVec>, Error> {
        let ring = self.ring();
        let pres = self.blowup.perverse_subcomplex(p)?;
        let h = Homology::compute(ring, &pres.complex)?;
        Ok(h.free_generators(k)
            .iter()
            .map(|g| pres.embed(ring, k, g))
            .collect())
    }

    /// `Φ(ω, η) = ε((ω ∪ η) ∩ γ)`.
    pub fn evaluate(&self, k: usize, omega: &SparseVec, eta: &SparseVec) -> i64 {
        let n = self.n();
        let ring = self.ring();
        let product = cup(&self.blowup, k, omega, n - k, eta);
        augmentation(ring, &cap(&self.blowup, n, &product, n, &self.gamma))
    }

    /// Pairing matrix between the free parts of `ℋ^k_p̄` and `ℋ^{n−k}_q̄`.
    pub fn pairing(
        &self,
        p: &Perversity,
        q: &Perversity,
        k: usize,
    ) -> Result<PairingReport, Error> {
        let n = self.n();
        if k > n {
            return Err(Error::PerversityMismatch(alloc::format!(
                "degree {k} above dimension {n}"
            )));
        }
        let left = self.free_classes(p, k)?;
        let right = self.free_classes(q, n - k)?;
        let mut m = DenseMatrix::zeros(left.len(), right.len());
        for (i, w) in left.iter().enumerate() {
            for (j, e) in right.iter().enumerate() {
                m.set(i, j, self.evaluate(k, w, e));
            }
        }
        Ok(PairingReport::new(self.coeff, k, m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub k: usize,
    pub matrix: DenseMatrix,
    /// Determinant, when the matrix is square.
    pub determinant: Option<i64>,
    pub nondegenerate: bool,
    pub unimodular: bool,
}

impl PairingReport {
    fn new(coeff: CoefficientRing, k: usize, matrix: DenseMatrix) -> Self {
        let ring = coeff.engine();
        let determinant = (matrix.rows() == matrix.cols()).then(|| matrix.determinant(ring));
        let nondegenerate = determinant.is_some_and(|d| d != 0);
        let unimodular = match coeff {
            CoefficientRing::Integers => determinant.is_some_and(|d| d == 1 || d == -1),
            _ => nondegenerate,
        };
        PairingReport {
            k,
            matrix,
            determinant,
            nondegenerate,
            unimodular,
        }
    }
}

/// Convenience wrapper: duality report for `x`.
pub fn duality(
    x: &FilteredComplex,
    p: &Perversity,
    coeff: CoefficientRing,
) -> Result<DualityReport, Error> {
    DualitySetup::new(x, coeff)?.duality(p)
}

/// Pairing between `ℋ^k_p̄` and `ℋ^{n−k}_{Dp̄}`.
pub fn pairing(
    x: &FilteredComplex,
    p: &Perversity,
    k: usize,
    coeff: CoefficientRing,
) -> Result<PairingReport, Error> {
    let p = p.bind(x)?;
    DualitySetup::new(x, coeff)?.pairing(&p, &p.complement(), k)
}

/// Witt condition on one odd-codimension stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittStratum {
    pub level: usize,
    pub id: usize,
    pub codim: usize,
    /// `𝔉H^{m̄}_{dim L / 2}(L)` for the link `L`.
    pub middle: HomologyGroup,
}

impl WittStratum {
    pub fn holds(&self) -> bool {
        self.middle.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittReport {
    pub strata: Vec<WittStratum>,
}

impl WittReport {
    pub fn is_witt(&self) -> bool {
        self.strata.iter().all(WittStratum::holds)
    }
}

/// Checks `𝔉H^{m̄}_{dim L/2}(L) = 0` on the recorded links of the singular
/// strata of odd codimension.
pub fn witt(space: &Space, coeff: CoefficientRing) -> Result<WittReport, Error> {
    coeff.validate()?;
    let x = &space.complex;
    let mut strata = Vec::new();
    for (_, s) in x.singular_strata() {
        if s.codim % 2 == 0 {
            continue;
        }
        let link = space.link(s.level, s.id).ok_or(Error::MissingLink {
            level: s.level,
            id: s.id,
        })?;
        let l = &link.complex;
        let m = Perversity::lower_middle(l.formal_dim());
        let h = homology(&tame_complex(l, &m, coeff)?.complex, coeff)?;
        strata.push(WittStratum {
            level: s.level,
            id: s.id,
            codim: s.codim,
            middle: h.degree(l.formal_dim() / 2),
        });
    }
    Ok(WittReport { strata })
}

/// The cochain complex `Hom(𝔉C^q̄_*, R)` with `(δf)(x) = (−1)^{k+1} f(∂x)`
/// for `f` of degree `k`, the sign matching the blown-up coboundary.
pub fn dual_tame_complex(chains: &ChainComplexPresentation, ring: Ring) -> ChainComplex {
    chains.complex.dual(ring, |k| k % 2 == 0)
}

/// Blown-up cohomology against the cohomology of the dual tame complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// `ℋ*_p̄`.
    pub blowup: HomologySummary,
    /// `𝔉H*_{Dp̄}`, the cohomology of `Hom(𝔉C^{Dp̄}_*, R)`.
    pub dual_tame: HomologySummary,
    pub ranks_equal: bool,
    /// Whether `χ` is a quasi-isomorphism.
    pub isomorphism: bool,
}

/// Compares `ℋ*_p̄(X)` with `𝔉H*_{Dp̄}(X)` through `χ`.
pub fn comparison(
    x: &FilteredComplex,
    p: &Perversity,
    coeff: CoefficientRing,
) -> Result<ComparisonReport, Error> {
    coeff.validate()?;
    let ring = coeff.engine();
    let p = p.bind(x)?;
    let b = BlowupComplex::new(x, coeff);
    let cochains = b.perverse_subcomplex(&p)?;
    let chains = tame_complex(x, &p.complement(), coeff)?;
    let dual = dual_tame_complex(&chains, ring);
    let top = x.formal_dim();
    let maps = chi_maps(&b, &cochains, &chains);
    // Reverse both sides to homological grading; degree j is cohomological top − j.
    let f: Vec<SparseMatrix> = (0..=top).map(|j| maps[top - j].clone()).collect();
    let cone = mapping_cone(
        ring,
        &cochains.complex.reversed(top),
        &dual.reversed(top),
        &f,
    );
    let blowup = homology(&cochains.complex, coeff)?;
    let dual_tame = homology(&dual, coeff)?;
    let ranks_equal = blowup.ranks() == dual_tame.ranks();
    let isomorphism = homology(&cone, coeff)?.is_acyclic();
    Ok(ComparisonReport {
        blowup,
        dual_tame,
        ranks_equal,
        isomorphism,
    })
}

/// Matrices of `χ : Ñ^k_p̄ → Hom(𝔉C_k^{Dp̄}, R)` in presentation
/// coordinates (generators of the tame chains index the rows).
pub fn chi_maps(
    b: &BlowupComplex,
    cochains: &ChainComplexPresentation,
    chains: &ChainComplexPresentation,
) -> Vec<SparseMatrix> {
    let ring = b.ring();
    (0..cochains.modules.len())
        .map(|k| {
            let tame: Vec<SparseVec> = chains.modules.get(k).map_or(Vec::new(), |m| m.generators());
            let cols = cochains.modules[k]
                .generators()
                .iter()
                .map(|g| {
                    let values = crate::products::chi(b, k, g);
                    SparseVec::from_entries(
                        ring,
                        tame.iter()
                            .enumerate()
                            .map(|(i, t)| (i, t.dot(ring, &values))),
                    )
                })
                .collect();
            SparseMatrix::from_columns(tame.len(), cols)
        })
        .collect()
}

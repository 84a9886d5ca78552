//! Serializable report types. Every report carries `"schema": "strata/1"`.

use serde::Serialize;
use strata_core::algebra::{CoefficientRing, DenseMatrix, HomologyGroup, HomologySummary};
use strata_core::perversity::Perversity;

pub const SCHEMA: &str = "strata/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    pub k: usize,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// Human-readable form such as `Z^2 + Z/2`.
    pub group: String,
}

pub fn group(k: usize, g: &HomologyGroup, ring: CoefficientRing) -> Group {
    Group {
        k,
        free_rank: g.free_rank,
        torsion: g.torsion.clone(),
        group: describe(g, ring),
    }
}

pub fn describe(g: &HomologyGroup, ring: CoefficientRing) -> String {
    if g.is_zero() {
        return "0".into();
    }
    let base = crate::format::ring_name(ring);
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push(base),
        r => parts.push(format!("{base}^{r}")),
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    parts.join(" + ")
}

pub fn summary(h: &HomologySummary, ring: CoefficientRing) -> Vec<Group> {
    h.degrees
        .iter()
        .enumerate()
        .map(|(k, g)| group(k, g, ring))
        .collect()
}

pub fn matrix(m: &DenseMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
}

/// A perversity as it applies to the singular strata of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumValue {
    pub level: usize,
    pub id: usize,
    pub value: i64,
}

pub fn perversity(p: &Perversity) -> Vec<StratumValue> {
    match p {
        Perversity::Strata { values, .. } => values
            .iter()
            .map(|(&(level, id), &value)| StratumValue { level, id, value })
            .collect(),
        Perversity::Codim { .. } => Vec::new(),
    }
}

#[derive(Debug, Serialize)]
pub struct HomologyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub complex: &'static str,
    pub ring: String,
    pub perversity: Vec<StratumValue>,
    pub degrees: Vec<Group>,
}

#[derive(Debug, Serialize)]
pub struct BasisEntry {
    /// Vertex ids of the regular simplex carrying the cell.
    pub simplex: Vec<u32>,
    /// `ε` per level `0..n`; `true` marks a cone factor.
    pub cone: Vec<bool>,
}

#[derive(Debug, Serialize)]
pub struct DegreeBasis {
    pub k: usize,
    /// Cells indexing the columns of `triplets`.
    pub cells: Vec<BasisEntry>,
    /// `[generator, cell, value]` entries of cocycles representing the
    /// generators of `degrees[k]`, torsion generators first.
    pub triplets: Vec<[i64; 3]>,
}

#[derive(Debug, Serialize)]
pub struct BlowupReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    pub perversity: Vec<StratumValue>,
    pub cells: usize,
    pub degrees: Vec<Group>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<DegreeBasis>>,
}

#[derive(Debug, Serialize)]
pub struct DualityDegree {
    pub k: usize,
    /// Blown-up cohomology in degree `k`.
    pub cohomology: Group,
    /// Tame homology in degree `n − k`.
    pub homology: Group,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct DualityReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    pub perversity: Vec<StratumValue>,
    pub iso: bool,
    pub degrees: Vec<DualityDegree>,
}

#[derive(Debug, Serialize)]
pub struct PairingReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    pub k: usize,
    pub p: Vec<StratumValue>,
    pub q: Vec<StratumValue>,
    pub matrix: Vec<Vec<i64>>,
    pub determinant: Option<i64>,
    pub nondegenerate: bool,
    pub unimodular: bool,
}

#[derive(Debug, Serialize)]
pub struct Identity {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ProductsReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    pub seed: u64,
    pub identities: Vec<Identity>,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct SweepCase {
    pub perversity: Vec<StratumValue>,
    pub iso: bool,
    pub cohomology: Vec<Group>,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    pub min: i64,
    pub max_above_top: i64,
    pub cases: Vec<SweepCase>,
    pub all_iso: bool,
}

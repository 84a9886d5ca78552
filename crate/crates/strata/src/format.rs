//! JSON input formats for spaces and perversities, and ring names.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use strata_core::algebra::CoefficientRing;
use strata_core::filtered_complex::{FilteredComplex, RawComplex};
use strata_core::perversity::Perversity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u32,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationEntry {
    pub simplex: Vec<u32>,
    pub sign: i64,
}

/// A filtered simplicial complex; listing the maximal simplices suffices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub formal_dim: usize,
    pub vertices: Vec<VertexEntry>,
    pub simplices: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orientations: Vec<OrientationEntry>,
}

impl SpaceFile {
    pub fn from_complex(name: Option<&str>, x: &FilteredComplex) -> Self {
        let raw = x.to_raw();
        SpaceFile {
            schema: Some(crate::report::SCHEMA.into()),
            name: name.map(str::to_string),
            formal_dim: raw.formal_dim,
            vertices: raw
                .vertices
                .iter()
                .map(|&(id, level)| VertexEntry { id, level })
                .collect(),
            simplices: raw.simplices,
            orientations: raw
                .orientations
                .into_iter()
                .map(|(simplex, sign)| OrientationEntry { simplex, sign })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FilteredComplex, String> {
        if let Some(o) = self.orientations.iter().find(|o| o.sign.abs() != 1) {
            return Err(format!(
                "orientation sign {} of {:?} is not ±1",
                o.sign, o.simplex
            ));
        }
        let raw = RawComplex {
            formal_dim: self.formal_dim,
            vertices: self.vertices.iter().map(|v| (v.id, v.level)).collect(),
            simplices: self.simplices.clone(),
            orientations: self
                .orientations
                .iter()
                .map(|o| (o.simplex.clone(), o.sign))
                .collect(),
        };
        FilteredComplex::build(&raw).map_err(|e| e.to_string())
    }
}

pub fn read_space(path: &Path) -> Result<FilteredComplex, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: SpaceFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.build().map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumValue {
    level: usize,
    id: usize,
    value: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PerversityFile {
    #[serde(default)]
    gm: Option<Vec<i64>>,
    #[serde(default)]
    strata: Option<Vec<StratumValue>>,
}

/// A perversity given as a preset name, inline JSON, or the path of a JSON
/// file, checked against `x`.
pub fn parse_perversity(text: &str, x: &FilteredComplex) -> Result<Perversity, String> {
    let n = x.formal_dim();
    if let Some(p) = Perversity::preset(text, n) {
        return Ok(p);
    }
    let json = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).map_err(|e| {
            format!("perversity `{text}` is not a preset, inline JSON or a readable file ({e})")
        })?
    };
    let file: PerversityFile =
        serde_json::from_str(&json).map_err(|e| format!("perversity: {e}"))?;
    let p = match (file.gm, file.strata) {
        (Some(table), None) => Perversity::gm(n, &table).map_err(|e| e.to_string())?,
        (None, Some(entries)) => {
            let mut values = BTreeMap::new();
            for e in entries {
                if values.insert((e.level, e.id), e.value).is_some() {
                    return Err(format!(
                        "perversity: stratum ({}, {}) listed twice",
                        e.level, e.id
                    ));
                }
            }
            Perversity::Strata {
                formal_dim: n,
                values,
            }
        }
        _ => return Err("perversity: give exactly one of `gm` and `strata`".into()),
    };
    p.resolve(x).map_err(|e| e.to_string())?;
    Ok(p)
}

/// `Z`, `Q`, or a prime field `Fp` (also written `Z/p`).
pub fn parse_ring(text: &str) -> Result<CoefficientRing, String> {
    let ring = match text {
        "Z" => CoefficientRing::Integers,
        "Q" => CoefficientRing::Rationals,
        _ => {
            let p = text
                .strip_prefix('F')
                .or_else(|| text.strip_prefix("Z/"))
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| {
                    format!("unknown ring `{text}`; expected Z, Q or Fp with p prime")
                })?;
            CoefficientRing::PrimeField(p)
        }
    };
    ring.validate().map_err(|e| e.to_string())
}

pub fn ring_name(ring: CoefficientRing) -> String {
    match ring {
        CoefficientRing::Integers => "Z".into(),
        CoefficientRing::Rationals => "Q".into(),
        CoefficientRing::PrimeField(p) => format!("F{p}"),
    }
}

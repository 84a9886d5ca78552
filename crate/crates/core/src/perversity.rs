//! Perversities: integer functions on singular strata, zero on regular strata.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::filtered_complex::FilteredComplex;

/// Top perversity value `codim − 2` (so `−1` on codimension-one strata and
/// `0` on regular strata).
pub fn top_value(codim: usize) -> i64 {
    if codim == 0 {
        0
    } else {
        codim as i64 - 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Perversity {
    /// Value depending only on codimension: `values[c]` for `c = 0..=n`.
    Codim { values: Vec<i64> },
    /// Value per singular stratum `(level, id)` of a complex of dimension `formal_dim`.
    Strata {
        formal_dim: usize,
        values: BTreeMap<(usize, usize), i64>,
    },
}

impl Perversity {
    pub fn zero(n: usize) -> Self {
        Perversity::Codim {
            values: alloc::vec![0; n + 1],
        }
    }

    pub fn top(n: usize) -> Self {
        Perversity::Codim {
            values: (0..=n).map(top_value).collect(),
        }
    }

    pub fn lower_middle(n: usize) -> Self {
        Perversity::Codim {
            values: (0..=n)
                .map(|c| {
                    if c == 0 {
                        0
                    } else {
                        (c as i64 - 2).div_euclid(2)
                    }
                })
                .collect(),
        }
    }

    pub fn upper_middle(n: usize) -> Self {
        Perversity::Codim {
            values: (0..=n)
                .map(|c| {
                    if c == 0 {
                        0
                    } else {
                        (c as i64 - 1).div_euclid(2)
                    }
                })
                .collect(),
        }
    }

    /// Named preset: `zero`, `top`, `lower-middle`, `upper-middle`.
    pub fn preset(name: &str, n: usize) -> Option<Self> {
        match name {
            "zero" => Some(Self::zero(n)),
            "top" => Some(Self::top(n)),
            "lower-middle" => Some(Self::lower_middle(n)),
            "upper-middle" => Some(Self::upper_middle(n)),
            _ => None,
        }
    }

    /// Goresky–MacPherson table `p(2), …, p(n)`; `p(0) = p(1) = 0`.
    pub fn gm(n: usize, table: &[i64]) -> Result<Self, Error> {
        if table.len() + 1 != n.max(1) {
            return Err(Error::PerversityMismatch(format!(
                "GM table has {} entries, expected {} for dimension {n}",
                table.len(),
                n.saturating_sub(1)
            )));
        }
        let ok = table.first().is_none_or(|&v| v == 0)
            && table.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1);
        if !ok {
            return Err(Error::NonMonotoneGm(table.to_vec()));
        }
        let mut values = alloc::vec![0, 0];
        values.extend_from_slice(table);
        values.truncate(n + 1);
        Ok(Perversity::Codim { values })
    }

    /// The same value `v` on every singular stratum of `x`.
    pub fn constant(x: &FilteredComplex, v: i64) -> Self {
        Self::from_fn(x, |_, _| v)
    }

    /// Values given by `f(level, id)` on the singular strata of `x`.
    pub fn from_fn(x: &FilteredComplex, f: impl Fn(usize, usize) -> i64) -> Self {
        let values = x
            .singular_strata()
            .map(|(_, s)| ((s.level, s.id), f(s.level, s.id)))
            .collect();
        Perversity::Strata {
            formal_dim: x.formal_dim(),
            values,
        }
    }

    pub fn formal_dim(&self) -> usize {
        match self {
            Perversity::Codim { values } => values.len() - 1,
            Perversity::Strata { formal_dim, .. } => *formal_dim,
        }
    }

    /// Whether this is a Goresky–MacPherson perversity.
    pub fn is_gm(&self) -> bool {
        match self {
            Perversity::Codim { values } => {
                values.iter().take(3).all(|&v| v == 0)
                    && values[2.min(values.len() - 1)..]
                        .windows(2)
                        .all(|w| w[0] <= w[1] && w[1] <= w[0] + 1)
            }
            Perversity::Strata { .. } => false,
        }
    }

    /// Value on the stratum `(level, id)` of `x`.
    pub fn value(&self, x: &FilteredComplex, level: usize, id: usize) -> Result<i64, Error> {
        let pos = x
            .stratum_position(level, id)
            .ok_or(Error::UnknownStratum { level, id })?;
        Ok(self.resolve(x)?[pos])
    }

    /// Values on all strata of `x`, indexed like [`FilteredComplex::strata`].
    pub fn resolve(&self, x: &FilteredComplex) -> Result<Vec<i64>, Error> {
        if self.formal_dim() != x.formal_dim() {
            return Err(Error::PerversityMismatch(format!(
                "perversity for dimension {}, complex of dimension {}",
                self.formal_dim(),
                x.formal_dim()
            )));
        }
        match self {
            Perversity::Codim { values } => {
                Ok(x.strata().iter().map(|s| values[s.codim]).collect())
            }
            Perversity::Strata { values, .. } => {
                for &(level, id) in values.keys() {
                    let pos = x
                        .stratum_position(level, id)
                        .ok_or(Error::UnknownStratum { level, id })?;
                    let v = values[&(level, id)];
                    if x.strata()[pos].is_regular() && v != 0 {
                        return Err(Error::RegularStratumValue { id, value: v });
                    }
                }
                x.strata()
                    .iter()
                    .map(|s| {
                        if s.is_regular() {
                            Ok(0)
                        } else {
                            values.get(&(s.level, s.id)).copied().ok_or_else(|| {
                                Error::PerversityMismatch(format!(
                                    "no value for stratum ({}, {})",
                                    s.level, s.id
                                ))
                            })
                        }
                    })
                    .collect()
            }
        }
    }

    /// Stratum-wise `t̄ − p̄`.
    pub fn complement(&self) -> Self {
        match self {
            Perversity::Codim { values } => Perversity::Codim {
                values: values
                    .iter()
                    .enumerate()
                    .map(|(c, &v)| top_value(c) - v)
                    .collect(),
            },
            Perversity::Strata { formal_dim, values } => Perversity::Strata {
                formal_dim: *formal_dim,
                values: values
                    .iter()
                    .map(|(&(level, id), &v)| ((level, id), top_value(formal_dim - level) - v))
                    .collect(),
            },
        }
    }

    /// The same perversity as an explicit stratum map on `x`.
    pub fn bind(&self, x: &FilteredComplex) -> Result<Self, Error> {
        let resolved = self.resolve(x)?;
        let values = x
            .singular_strata()
            .map(|(pos, s)| ((s.level, s.id), resolved[pos]))
            .collect();
        Ok(Perversity::Strata {
            formal_dim: x.formal_dim(),
            values,
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self, Error> {
        match (self, other) {
            (Perversity::Codim { values: a }, Perversity::Codim { values: b })
                if a.len() == b.len() =>
            {
                Ok(Perversity::Codim {
                    values: a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect(),
                })
            }
            (
                Perversity::Strata {
                    formal_dim: n,
                    values: a,
                },
                Perversity::Strata {
                    formal_dim: m,
                    values: b,
                },
            ) if n == m && a.len() == b.len() && a.keys().eq(b.keys()) => Ok(Perversity::Strata {
                formal_dim: *n,
                values: a.iter().map(|(k, &x)| (*k, f(x, b[k]))).collect(),
            }),
            _ => Err(Error::PerversityMismatch(
                "perversities of different shapes; bind both to the complex first".into(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a - b)
    }

    /// Stratum-wise `≤`.
    pub fn leq(&self, other: &Self) -> Result<bool, Error> {
        let d = other.sub(self)?;
        Ok(match d {
            Perversity::Codim { values } => values.iter().all(|&v| v >= 0),
            Perversity::Strata { values, .. } => values.values().all(|&v| v >= 0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(
            Perversity::top(4),
            Perversity::Codim {
                values: alloc::vec![0, -1, 0, 1, 2]
            }
        );
        let m = Perversity::lower_middle(4);
        let n = Perversity::upper_middle(4);
        assert_eq!(m.add(&n).unwrap(), Perversity::top(4));
        assert_eq!(m.complement(), n);
        // t̄ is negative in codimension one.
        assert!(!Perversity::zero(4).leq(&Perversity::top(4)).unwrap());
        assert!(Perversity::zero(4)
            .leq(&Perversity::upper_middle(4))
            .unwrap());
    }

    #[test]
    fn complement_is_involution() {
        let p = Perversity::gm(5, &[0, 1, 1, 2]).unwrap();
        assert!(p.is_gm());
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn gm_validation() {
        assert!(Perversity::gm(4, &[0, 2, 2]).is_err());
        assert!(Perversity::gm(4, &[0, 1]).is_err());
    }
}

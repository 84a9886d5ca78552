//! Coefficient rings.
//!
//! Every matrix in this crate stores `i64` entries. The [`Ring`] value decides
//! how those entries combine: checked integer arithmetic for ℤ, reduced
//! residues in `[0, p)` for ℤ/p.

use core::fmt;

use crate::error::Error;

/// Coefficient ring requested by a caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    /// Rejects `PrimeField(p)` for composite or out-of-range `p`.
    pub fn validate(self) -> Result<Self, Error> {
        match self {
            CoefficientRing::PrimeField(p) if !is_prime(p) || p > MAX_PRIME => {
                Err(Error::InvalidModulus(p))
            }
            other => Ok(other),
        }
    }

    /// The arithmetic used to compute with this ring.
    ///
    /// ℚ-computations run over ℤ: all complexes here are defined over ℤ and
    /// ℚ is flat, so ranks, kernels and quasi-isomorphism tests transfer;
    /// torsion is discarded when reporting.
    pub fn engine(self) -> Ring {
        match self {
            CoefficientRing::Integers | CoefficientRing::Rationals => Ring::Integers,
            CoefficientRing::PrimeField(p) => Ring::PrimeField(p),
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn reports_torsion(self) -> bool {
        matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Rationals => f.write_str("Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Largest modulus accepted, so that products of residues fit in `i64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic on `i64` entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    PrimeField(u64),
}

impl Ring {
    #[inline]
    pub fn from_int(self, v: i64) -> i64 {
        match self {
            Ring::Integers => v,
            Ring::PrimeField(p) => v.rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        match self {
            Ring::Integers => a.checked_add(b).expect("integer coefficient overflow"),
            Ring::PrimeField(p) => (a + b) % p as i64,
        }
    }

    #[inline]
    pub fn sub(self, a: i64, b: i64) -> i64 {
        match self {
            Ring::Integers => a.checked_sub(b).expect("integer coefficient overflow"),
            Ring::PrimeField(p) => (a - b).rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn neg(self, a: i64) -> i64 {
        match self {
            Ring::Integers => a.checked_neg().expect("integer coefficient overflow"),
            Ring::PrimeField(p) => {
                if a == 0 {
                    0
                } else {
                    p as i64 - a
                }
            }
        }
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            Ring::Integers => a.checked_mul(b).expect("integer coefficient overflow"),
            Ring::PrimeField(p) => (a as i128 * b as i128).rem_euclid(p as i128) as i64,
        }
    }

    /// `a * (-1)^e`.
    #[inline]
    pub fn signed(self, a: i64, odd: bool) -> i64 {
        if odd {
            self.neg(a)
        } else {
            a
        }
    }

    #[inline]
    pub fn is_unit(self, a: i64) -> bool {
        match self {
            Ring::Integers => a == 1 || a == -1,
            Ring::PrimeField(_) => a != 0,
        }
    }

    /// Inverse of a unit. Panics on non-units.
    pub fn unit_inverse(self, a: i64) -> i64 {
        match self {
            Ring::Integers => {
                assert!(a == 1 || a == -1, "{a} is not a unit in Z");
                a
            }
            Ring::PrimeField(p) => {
                assert!(a != 0, "zero has no inverse");
                pow_mod(a as u64, p - 2, p) as i64
            }
        }
    }

    /// Euclidean size: `|a|` over ℤ, 0/1 over a field.
    #[inline]
    pub fn size(self, a: i64) -> u64 {
        match self {
            Ring::Integers => a.unsigned_abs(),
            Ring::PrimeField(_) => (a != 0) as u64,
        }
    }

    /// Euclidean division `a = q b + r` with `size(r) < size(b)`.
    pub fn div_rem(self, a: i64, b: i64) -> (i64, i64) {
        match self {
            Ring::Integers => {
                let q = a.div_euclid(b);
                let r = a.rem_euclid(b);
                // Prefer the remainder of least absolute value.
                if r != 0 && 2 * r > b.abs() {
                    let q2 = if b > 0 { q + 1 } else { q - 1 };
                    (q2, a - q2 * b)
                } else {
                    (q, r)
                }
            }
            Ring::PrimeField(_) => (self.mul(a, self.unit_inverse(b)), 0),
        }
    }

    /// Exact quotient `a / b`, if `b` divides `a`.
    pub fn divide(self, a: i64, b: i64) -> Option<i64> {
        let (q, r) = self.div_rem(a, b);
        (r == 0).then_some(q)
    }

    /// Canonical associate used for diagonal entries (positive over ℤ, 1 over a field).
    pub fn normalizing_unit(self, a: i64) -> i64 {
        match self {
            Ring::Integers => {
                if a < 0 {
                    -1
                } else {
                    1
                }
            }
            Ring::PrimeField(_) => {
                if a == 0 {
                    1
                } else {
                    self.unit_inverse(a)
                }
            }
        }
    }

    /// Signed integer representative, for reporting.
    pub fn to_int(self, a: i64) -> i64 {
        match self {
            Ring::Integers => a,
            Ring::PrimeField(p) => {
                if a > p as i64 / 2 {
                    a - p as i64
                } else {
                    a
                }
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse_roundtrip() {
        let f = Ring::PrimeField(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.unit_inverse(a)), 1);
        }
    }

    #[test]
    fn integer_div_rem_minimizes_remainder() {
        let z = Ring::Integers;
        assert_eq!(z.div_rem(7, 3), (2, 1));
        assert_eq!(z.div_rem(8, 3), (3, -1));
        assert_eq!(z.div_rem(-7, 3), (-2, -1));
        assert_eq!(z.div_rem(5, -2).0 * -2 + z.div_rem(5, -2).1, 5);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(CoefficientRing::PrimeField(4).validate().is_err());
        assert!(CoefficientRing::PrimeField(2).validate().is_ok());
    }
}

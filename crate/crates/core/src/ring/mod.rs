//! Coefficient rings `Z`, `Q`, `Z/m` and exact linear algebra over them.

mod matrix;
mod snf;
mod solve;

pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
pub use solve::{solve_linear, Certificate, LinearSolution};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `Z/m` with `m >= 2`.
    Modular(u64),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<RingSpec> {
        match text.trim() {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            t => {
                let m = t
                    .strip_prefix("Z/")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::Ring(format!("unknown ring `{t}` (expected Z, Q or Z/<m>)")))?;
                RingSpec::modular(m)
            }
        }
    }

    pub fn modular(m: u64) -> Result<RingSpec> {
        if m < 2 {
            return Err(Error::Ring(format!("modulus {m} must be at least 2")));
        }
        Ok(RingSpec::Modular(m))
    }

    pub fn zero(self) -> RingElem {
        self.from_i64(0)
    }

    pub fn one(self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> RingElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> RingElem {
        match self {
            RingSpec::Integers => RingElem::Int(v.clone()),
            RingSpec::Rationals => RingElem::Rat(BigRational::from_integer(v.clone())),
            RingSpec::Modular(m) => RingElem::Mod { residue: reduce(v, m), modulus: m },
        }
    }

    /// Image of a rational number, if its denominator is invertible in the ring.
    pub fn from_rational(self, q: &BigRational) -> Option<RingElem> {
        match self {
            RingSpec::Integers => q.is_integer().then(|| RingElem::Int(q.to_integer())),
            RingSpec::Rationals => Some(RingElem::Rat(q.clone())),
            RingSpec::Modular(m) => {
                let d = reduce(q.denom(), m);
                let inv = mod_inverse(d, m)?;
                let n = reduce(q.numer(), m);
                Some(RingElem::Mod { residue: mul_mod(n, inv, m), modulus: m })
            }
        }
    }

    /// Whether the integer `n` is a unit of the ring.
    pub fn is_unit_integer(self, n: &BigInt) -> bool {
        self.from_bigint(n).is_unit()
    }

    /// Parses an element as printed by [`RingElem`]'s `Display`.
    pub fn parse_elem(self, text: &str) -> Result<RingElem> {
        let t = text.trim();
        let bad = || Error::Parse(format!("`{t}` is not an element of {self}"));
        match self {
            RingSpec::Rationals => {
                let q = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
                };
                Ok(RingElem::Rat(q))
            }
            _ => Ok(self.from_bigint(&t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }

    pub fn is_field(self) -> bool {
        match self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::Modular(m) => is_prime(m),
        }
    }

    /// Characteristic, `0` for `Z` and `Q`.
    pub fn characteristic(self) -> u64 {
        match self {
            RingSpec::Modular(m) => m,
            _ => 0,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::Rationals => f.write_str("Q"),
            RingSpec::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

/// An element of one of the coefficient rings.
///
/// Arithmetic between elements of different rings is a logic error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    /// Always in lowest terms with positive denominator.
    Rat(BigRational),
    Mod {
        residue: u64,
        modulus: u64,
    },
}

impl RingElem {
    pub fn ring(&self) -> RingSpec {
        match self {
            RingElem::Int(_) => RingSpec::Integers,
            RingElem::Rat(_) => RingSpec::Rationals,
            RingElem::Mod { modulus, .. } => RingSpec::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(v) => v.is_zero(),
            RingElem::Rat(v) => v.is_zero(),
            RingElem::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(v) => v.is_one(),
            RingElem::Rat(v) => v.is_one(),
            RingElem::Mod { residue, .. } => *residue == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElem::Int(v) => v.abs().is_one(),
            RingElem::Rat(v) => !v.is_zero(),
            RingElem::Mod { residue, modulus } => residue.gcd(modulus) == 1,
        }
    }

    pub fn inv(&self) -> Option<RingElem> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            RingElem::Int(v) => RingElem::Int(v.clone()),
            RingElem::Rat(v) => RingElem::Rat(v.recip()),
            RingElem::Mod { residue, modulus } => {
                RingElem::Mod { residue: mod_inverse(*residue, *modulus)?, modulus: *modulus }
            }
        })
    }

    /// Integer representative: the value itself over `Z`, the residue in `[0, m)` over `Z/m`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            RingElem::Int(v) => Some(v.clone()),
            RingElem::Rat(v) => v.is_integer().then(|| v.to_integer()),
            RingElem::Mod { residue, .. } => Some(BigInt::from(*residue)),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            RingElem::Int(v) => BigRational::from_integer(v.clone()),
            RingElem::Rat(v) => v.clone(),
            RingElem::Mod { residue, .. } => BigRational::from_integer(BigInt::from(*residue)),
        }
    }

    fn zip(&self, other: &RingElem, op: &str) -> RingSpec {
        let r = self.ring();
        assert_eq!(r, other.ring(), "{op} of elements of {r} and {}", other.ring());
        r
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(v) => write!(f, "{v}"),
            RingElem::Rat(v) => write!(f, "{v}"),
            RingElem::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl Add for &RingElem {
    type Output = RingElem;

    fn add(self, other: &RingElem) -> RingElem {
        self.zip(other, "sum");
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a + b),
            (RingElem::Mod { residue: a, modulus: m }, RingElem::Mod { residue: b, .. }) => {
                RingElem::Mod { residue: ((*a as u128 + *b as u128) % *m as u128) as u64, modulus: *m }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Rat(a) => RingElem::Rat(-a),
            RingElem::Mod { residue, modulus } => {
                RingElem::Mod { residue: (modulus - residue) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;

    fn sub(self, other: &RingElem) -> RingElem {
        self + &(-other)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;

    fn mul(self, other: &RingElem) -> RingElem {
        self.zip(other, "product");
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a * b),
            (RingElem::Mod { residue: a, modulus: m }, RingElem::Mod { residue: b, .. }) => {
                RingElem::Mod { residue: mul_mod(*a, *b, *m), modulus: *m }
            }
            _ => unreachable!(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $f(self, other: RingElem) -> RingElem {
                (&self).$f(&other)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

pub(crate) fn reduce(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(RingSpec::parse("Z/12").unwrap(), RingSpec::Modular(12));
        for bad in ["Z/1", "Z/0", "Z/", "R", "Z/x", "z"] {
            assert!(matches!(RingSpec::parse(bad), Err(Error::Ring(_))), "{bad}");
        }
        assert_eq!(RingSpec::Modular(7).to_string(), "Z/7");
    }

    #[test]
    fn units() {
        assert!(!RingSpec::Integers.from_i64(2).is_unit());
        assert!(RingSpec::Integers.from_i64(-1).is_unit());
        assert!(RingSpec::Modular(3).from_i64(2).is_unit());
        assert!(!RingSpec::Modular(4).from_i64(2).is_unit());
        assert!(!RingSpec::Rationals.zero().is_unit());
        assert_eq!(RingSpec::Modular(3).from_i64(2).inv().unwrap(), RingSpec::Modular(3).from_i64(2));
        assert_eq!(RingSpec::Modular(7).from_i64(3).inv().unwrap().to_string(), "5");
    }

    #[test]
    fn modular_arithmetic_matches_integers() {
        for m in 2..=12u64 {
            let r = RingSpec::Modular(m);
            for a in -5i64..15 {
                for b in -5i64..15 {
                    assert_eq!(r.from_i64(a) * r.from_i64(b), r.from_i64(a * b));
                    assert_eq!(r.from_i64(a) - r.from_i64(b), r.from_i64(a - b));
                }
            }
        }
    }

    #[test]
    fn rationals_into_rings() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(RingSpec::Modular(3).from_rational(&half).unwrap().to_string(), "2");
        assert!(RingSpec::Modular(4).from_rational(&half).is_none());
        assert!(RingSpec::Integers.from_rational(&half).is_none());
        assert_eq!(RingSpec::Rationals.from_rational(&half).unwrap().to_string(), "1/2");
    }

    #[test]
    fn element_strings_round_trip() {
        for (ring, s) in [(RingSpec::Rationals, "-3/4"), (RingSpec::Integers, "-7"), (RingSpec::Modular(5), "3")] {
            assert_eq!(ring.parse_elem(s).unwrap().to_string(), s);
        }
        assert_eq!(RingSpec::Rationals.parse_elem("2/4").unwrap().to_string(), "1/2");
        assert!(RingSpec::Rationals.parse_elem("1/0").is_err());
        assert!(RingSpec::Integers.parse_elem("1/2").is_err());
    }
}

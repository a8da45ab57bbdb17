use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::field::{FieldSpec, Prime};
use crate::{Error, Result};

/// An element of 𝔽ₚ, always stored reduced into `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Prime,
}

impl Residue {
    pub fn new(value: i64, modulus: Prime) -> Self {
        let p = modulus.get() as i64;
        Residue { value: value.rem_euclid(p) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }
}

/// An exact field element.
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// [`BigRational`]), so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(Residue),
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::PrimeField(p) => Scalar::Residue(Residue::new(v, p)),
        }
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue(r) => FieldSpec::PrimeField(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a + b, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a * b, |a, b, p| a * b % p)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue(r) => {
                let p = r.modulus.get();
                Scalar::Residue(Residue { value: (p - r.value) % p, modulus: r.modulus })
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue(r) => Scalar::Residue(Residue {
                value: inv_mod(r.value, r.modulus.get()),
                modulus: r.modulus,
            }),
        })
    }

    fn zip(
        &self,
        other: &Scalar,
        rat: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        res: impl FnOnce(u64, u64, u64) -> u64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(rat(a, b))),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                let p = a.modulus.get();
                Ok(Scalar::Residue(Residue { value: res(a.value, b.value, p), modulus: a.modulus }))
            }
            _ => Err(Error::FieldMismatch { left: self.field(), right: other.field() }),
        }
    }

    /// Parses an entry of the given field: `num` or `num/den` for ℚ, an
    /// integer in `0..p` for 𝔽ₚ.
    pub fn parse_in(field: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad {field} entry '{s}'"));
        match field {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= p.get() {
                    return Err(bad());
                }
                Ok(Scalar::Residue(Residue { value: v, modulus: p }))
            }
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i64) as u64
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
            Scalar::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

/// Rationals serialize as `"num/den"` strings, residues as integers.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(q) => serializer.serialize_str(&format_rational(q)),
            Scalar::Residue(r) => serializer.serialize_u64(r.value),
        }
    }
}

/// Sign of a rational scalar (`-1`, `0`, `1`); residues have no sign.
pub fn rational_signum(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn modular_arithmetic() {
        let a = Scalar::from_i64(f5(), 3);
        let b = Scalar::from_i64(f5(), 4);
        assert_eq!(a.add(&b).unwrap(), Scalar::from_i64(f5(), 2));
        assert_eq!(a.sub(&b).unwrap(), Scalar::from_i64(f5(), 4));
        assert_eq!(a.mul(&b).unwrap(), Scalar::from_i64(f5(), 2));
        assert_eq!(Scalar::from_i64(f5(), -1), b);
        for v in 1..5 {
            let x = Scalar::from_i64(f5(), v);
            assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), Scalar::one(f5()));
        }
        assert!(Scalar::zero(f5()).inv().is_none());
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Scalar::rational(6, -4).unwrap();
        let q = a.as_rational().unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let b = Scalar::rational(1, 6).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.to_string(), "-4/3");
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let q = Scalar::one(FieldSpec::Rationals);
        let r = Scalar::one(f5());
        assert!(matches!(q.add(&r), Err(Error::FieldMismatch { .. })));
        let r7 = Scalar::one(FieldSpec::prime(7).unwrap());
        assert!(r.mul(&r7).is_err());
    }

    #[test]
    fn parse_entries() {
        let q = FieldSpec::Rationals;
        assert_eq!(Scalar::parse_in(q, "4/6").unwrap().to_string(), "2/3");
        assert_eq!(Scalar::parse_in(q, "-7").unwrap().to_string(), "-7");
        assert!(Scalar::parse_in(q, "1/0").is_err());
        assert_eq!(Scalar::parse_in(f5(), "4").unwrap(), Scalar::from_i64(f5(), 4));
        assert!(Scalar::parse_in(f5(), "5").is_err());
        assert!(Scalar::parse_in(f5(), "-1").is_err());
    }

    #[test]
    fn inverse_mod_large_prime() {
        let p = 1_000_003;
        for a in [1u64, 2, 999, 1_000_002] {
            assert_eq!(a * inv_mod(a, p) % p, 1);
        }
    }
}

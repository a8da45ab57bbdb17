use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest modulus accepted; keeps products of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime modulus, checked by trial division when constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field all entries of a matrix live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(Prime),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldSpec::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    /// True iff the characteristic is not 2.
    pub fn characteristic_ok(self) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => p.get() != 2,
        }
    }

    pub(crate) fn ensure_same(self, other: FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self, right: other })
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("Fp:") {
            Some(p) => {
                let p = p
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad modulus in field '{s}'")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::Parse(format!("unknown field '{s}', expected Q or Fp:<p>"))),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(101).is_ok());
    }

    #[test]
    fn characteristic() {
        assert!(FieldSpec::Rationals.characteristic_ok());
        assert!(!FieldSpec::prime(2).unwrap().characteristic_ok());
        assert!(FieldSpec::prime(3).unwrap().characteristic_ok());
    }

    #[test]
    fn parse_and_display() {
        for s in ["Q", "Fp:2", "Fp:7", "Fp:101"] {
            let f: FieldSpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!(matches!("Fp:8".parse::<FieldSpec>(), Err(Error::NonPrimeModulus(8))));
        assert!("R".parse::<FieldSpec>().is_err());
    }
}

//! Exact rationals and their string wire form (`"p/q"` in lowest terms, `"p"` when integral).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_wire(r: &Rational) -> String {
    r.to_string()
}

pub fn from_wire(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    if r.denom().is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(r)
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

/// serde adapter for a single rational field.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_wire(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::from_wire(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for an optional rational field (`null` when absent).
pub mod serde_opt_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&super::to_wire(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::from_wire(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

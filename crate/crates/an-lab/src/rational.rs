//! Exact rational scalars shared by every symbolic module.
//!
//! All spectral data is kept as arbitrary-precision rationals until a numeric
//! kernel explicitly converts to `f64`. On the wire a rational is either a
//! JSON integer or a string `"p/q"` in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Lossy conversion for numeric consumers.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Falls back to separate conversions when the ratio overflows.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Canonical display form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid rational literal {0:?} (expected an integer or \"p/q\")")]
pub struct ParseRatError(pub String);

/// Parses `"p"` or `"p/q"`, with an optional leading sign on `p`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let bad = || ParseRatError(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Serde adapter: `#[serde(with = "crate::rational::serde_rat")]`.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        if r.denom() == &BigInt::from(1) {
            if let Some(i) = r.numer().to_i64() {
                return ser.serialize_i64(i);
            }
        }
        ser.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        struct RatVisitor;

        impl<'de> Visitor<'de> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(rat_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat::from_integer(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rat(v).map_err(de::Error::custom)
            }
        }

        de.deserialize_any(RatVisitor)
    }
}

/// Same adapter for `Option<Rat>` fields serialized as `value | null`.
pub mod serde_rat_opt {
    use super::*;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, ser: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => serde_rat::serialize(r, ser),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rat>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "serde_rat")] Rat);
        Ok(Option::<Wrap>::deserialize(de)?.map(|w| w.0))
    }
}

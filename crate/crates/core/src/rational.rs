//! Exact rational scalars for step-function values.
//!
//! `Rational` is arbitrary-precision and always kept in reduced canonical
//! form by construction, so equality is structural equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

/// Small literal rational, mainly for tests and sampled values.
pub fn rat(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses "n" or "n/d" with optional sign, into reduced form.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational literal".into());
    }
    let (numer, denom) = match text.split_once('/') {
        None => (text, "1"),
        Some((n, d)) => (n, d),
    };
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in `{text}`"))?;
    let denom: BigInt = denom
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in `{text}`"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats in the canonical file form: "n" for integers, "n/d" otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Serde adapter keeping rationals in the "n" / "n/d" string form used by
/// every file format here.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Least integer n with |r| ≤ n, as a rational.
pub fn ceil_abs(r: &Rational) -> Rational {
    Rational::from(r.abs().ceil().to_integer())
}

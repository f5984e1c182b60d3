//! Exact rational arithmetic: polynomials, Sturm chains, enclosures and
//! positivity certificates.
//!
//! Everything here is computed over `BigRational`, so root counts and
//! certificate verdicts carry no rounding error. Floating point only enters
//! through [`to_f64`], which callers use for reporting.

mod certify;
mod elementary;
mod enclosure;
mod envelope;
mod polynomial;
mod sturm;

pub use certify::{certify_positive_poly, Certificate, Method, Status, Witness};
pub use elementary::{cos_enclosure, pi_enclosure, sin_enclosure};
pub use enclosure::Enclosure;
pub use envelope::{poly_with_interval_coeffs, Envelope, IntervalPolynomial};
pub use polynomial::Polynomial;
pub use sturm::{count_roots_in, sturm_chain, SturmChain};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The exact binary value of a finite `f64`.
pub fn rat_from_f64(x: f64) -> Result<Rational> {
    match Rational::from_float(x) {
        Some(r) => Ok(r),
        None => domain(format!("{x} is not a finite float")),
    }
}

/// Nearest `f64` (used for reporting and for seeding float evaluation).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses a plain decimal such as `-0.37059` or `12` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return domain(format!("not a decimal number: {s:?}"));
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| crate::Error::Domain(format!("bad decimal {s:?}")))?
    };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Rounds `r` down to a multiple of `10^-digits`.
pub fn floor_decimal(r: &Rational, digits: usize) -> Rational {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    (r * &scale).floor() / scale
}

/// Rounds `r` up to a multiple of `10^-digits`.
pub fn ceil_decimal(r: &Rational, digits: usize) -> Rational {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    (r * &scale).ceil() / scale
}

pub(crate) fn rat_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_serde {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational>().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.37059").unwrap(), rat(37059, 100000));
        assert_eq!(parse_decimal("-12").unwrap(), int(-12));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        assert!(parse_decimal("1e5").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn decimal_rounding_brackets() {
        let third = rat(1, 3);
        assert!(floor_decimal(&third, 5) < third);
        assert!(ceil_decimal(&third, 5) > third);
        assert_eq!(ceil_decimal(&third, 5) - floor_decimal(&third, 5), rat(1, 100000));
    }

    #[test]
    fn float_conversion_is_exact() {
        let r = rat_from_f64(0.1).unwrap();
        assert_ne!(r, rat(1, 10));
        assert_eq!(to_f64(&r), 0.1);
        assert!(rat_from_f64(f64::NAN).is_err());
    }
}

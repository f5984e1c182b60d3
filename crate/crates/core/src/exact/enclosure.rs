use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat_from_f64, to_f64, Rational};
use crate::error::{domain, Result};

/// A closed interval `[lo, hi]` with rational endpoints that is known to
/// contain some exactly defined real quantity.
///
/// Arithmetic is exact interval arithmetic, so the containment property is
/// preserved by every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "super::rational_serde")]
    lo: Rational,
    #[serde(with = "super::rational_serde")]
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return domain(format!("empty enclosure [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(value: Rational) -> Self {
        Self { lo: value.clone(), hi: value }
    }

    /// `[mid - rad, mid + rad]` using the exact binary values of both floats.
    pub fn from_f64(mid: f64, rad: f64) -> Result<Self> {
        if !(rad >= 0.0) {
            return domain(format!("radius must be non-negative, got {rad}"));
        }
        let m = rat_from_f64(mid)?;
        let r = rat_from_f64(rad)?;
        Ok(Self { lo: &m - &r, hi: m + r })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match rat_from_f64(x) {
            Ok(r) => self.contains(&r),
            Err(_) => false,
        }
    }

    /// True when `self` lies inside `other`.
    pub fn subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn powi(&self, n: u32) -> Enclosure {
        let mut acc = Enclosure::point(Rational::from_integer(1.into()));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Widens the endpoints outward onto the grid `10^-digits`, keeping
    /// denominators small for downstream exact work.
    pub fn round_outward(&self, digits: usize) -> Enclosure {
        Enclosure {
            lo: super::floor_decimal(&self.lo, digits),
            hi: super::ceil_decimal(&self.hi, digits),
        }
    }

    /// Float bounds `(lo, hi)` with `lo <= self.lo` and `hi >= self.hi`.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (to_f64(&self.lo).next_down(), to_f64(&self.hi).next_up())
    }

    /// Float midpoint and a radius that covers the whole enclosure.
    pub fn mid_rad_f64(&self) -> (f64, f64) {
        let (lo, hi) = self.to_f64_bounds();
        let mid = 0.5 * (lo + hi);
        let rad = (mid - lo).max(hi - mid);
        (mid, rad * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE)
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn zero() -> Enclosure {
        Enclosure::point(Rational::zero())
    }
}

impl From<Rational> for Enclosure {
    fn from(r: Rational) -> Self {
        Enclosure::point(r)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        if self.is_point() {
            write!(f, "{}", to_f64(&self.lo))
        } else {
            write!(f, "[{lo:.17e}, {hi:.17e}]")
        }
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Enclosure { lo, hi }
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        &self + &rhs
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        &self - &rhs
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rejects_inverted_endpoints() {
        assert!(Enclosure::new(rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn product_covers_sign_changes() {
        let a = Enclosure::new(rat(-1, 1), rat(2, 1)).unwrap();
        let b = Enclosure::new(rat(-3, 1), rat(1, 1)).unwrap();
        let p = &a * &b;
        assert_eq!(p.lo(), &rat(-6, 1));
        assert_eq!(p.hi(), &rat(3, 1));
    }

    #[test]
    fn subtraction_is_outward() {
        let a = Enclosure::new(rat(1, 1), rat(2, 1)).unwrap();
        let d = &a - &a;
        assert_eq!(d.lo(), &rat(-1, 1));
        assert_eq!(d.hi(), &rat(1, 1));
    }

    #[test]
    fn float_bounds_bracket_endpoints() {
        let e = Enclosure::new(rat(1, 3), rat(2, 3)).unwrap();
        let (lo, hi) = e.to_f64_bounds();
        assert!(rat_from_f64(lo).unwrap() <= rat(1, 3));
        assert!(rat_from_f64(hi).unwrap() >= rat(2, 3));
        let (m, r) = e.mid_rad_f64();
        assert!(Enclosure::from_f64(m, r).unwrap().lo() <= e.lo());
        assert!(Enclosure::from_f64(m, r).unwrap().hi() >= e.hi());
    }

    #[test]
    fn outward_rounding_contains_original() {
        let e = Enclosure::new(rat(1, 7), rat(2, 7)).unwrap();
        assert!(e.subset_of(&e.round_outward(3)));
    }
}

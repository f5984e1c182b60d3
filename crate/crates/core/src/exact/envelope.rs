use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Enclosure, Polynomial, Rational};
use crate::error::{domain, Result};

/// A polynomial whose coefficients are only known up to enclosures, e.g.
/// because they depend on an irrational parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalPolynomial {
    coeffs: Vec<Enclosure>,
}

/// Exact polynomials bracketing every member of an [`IntervalPolynomial`] on
/// a stated domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Envelope {
    pub lower: Polynomial,
    pub upper: Polynomial,
    pub domain: Enclosure,
}

impl IntervalPolynomial {
    pub fn new(mut coeffs: Vec<Enclosure>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_point() && c.lo().is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Enclosure] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The polynomial through the coefficient midpoints.
    pub fn midpoint(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(Enclosure::mid).collect())
    }

    /// Exact polynomial when every coefficient is degenerate.
    pub fn as_exact(&self) -> Option<Polynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_point().then(|| c.lo().clone()))
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }

    pub fn max_width(&self) -> Rational {
        self.coeffs.iter().map(Enclosure::width).max().unwrap_or_default()
    }

    /// Range enclosure of the polynomial at an exact point.
    pub fn eval(&self, x: &Rational) -> Enclosure {
        let xe = Enclosure::point(x.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Enclosure::zero(), |acc, c| &(&acc * &xe) + c)
    }

    /// Lower and upper envelopes valid for `x` in `[lo, hi]`.
    ///
    /// The domain must not straddle zero: the sign of `x^j` decides which
    /// coefficient endpoint is extremal.
    pub fn envelopes(&self, lo: &Rational, hi: &Rational) -> Result<Envelope> {
        if lo > hi {
            return domain(format!("empty domain [{lo}, {hi}]"));
        }
        let nonneg = !lo.is_negative();
        let nonpos = !hi.is_positive();
        if !nonneg && !nonpos {
            return domain(format!("envelope domain [{lo}, {hi}] straddles zero"));
        }
        let mut lower = Vec::with_capacity(self.coeffs.len());
        let mut upper = Vec::with_capacity(self.coeffs.len());
        for (j, c) in self.coeffs.iter().enumerate() {
            let power_nonneg = nonneg || j % 2 == 0;
            if power_nonneg {
                lower.push(c.lo().clone());
                upper.push(c.hi().clone());
            } else {
                lower.push(c.hi().clone());
                upper.push(c.lo().clone());
            }
        }
        Ok(Envelope {
            lower: Polynomial::new(lower),
            upper: Polynomial::new(upper),
            domain: Enclosure::new(lo.clone(), hi.clone())?,
        })
    }
}

impl From<&Polynomial> for IntervalPolynomial {
    fn from(p: &Polynomial) -> Self {
        IntervalPolynomial::new(p.coeffs().iter().cloned().map(Enclosure::point).collect())
    }
}

/// Lower/upper envelope pair for coefficient enclosures on `[lo, hi]`.
pub fn poly_with_interval_coeffs(
    coeffs: &[Enclosure],
    lo: &Rational,
    hi: &Rational,
) -> Result<Envelope> {
    IntervalPolynomial::new(coeffs.to_vec()).envelopes(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn degenerate_coefficients_give_identical_envelopes() {
        let p = Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1)]);
        let env = IntervalPolynomial::from(&p).envelopes(&int(0), &int(1)).unwrap();
        assert_eq!(env.lower, p);
        assert_eq!(env.upper, p);
    }

    #[test]
    fn constant_enclosure() {
        let c = Enclosure::new(int(1), int(2)).unwrap();
        let env = poly_with_interval_coeffs(&[c], &int(0), &int(1)).unwrap();
        assert_eq!(env.lower, Polynomial::from_i64s(&[1]));
        assert_eq!(env.upper, Polynomial::from_i64s(&[2]));
    }

    #[test]
    fn negative_domain_flips_odd_powers() {
        let c = Enclosure::new(int(1), int(2)).unwrap();
        let env = poly_with_interval_coeffs(&[c.clone(), c], &int(-1), &int(0)).unwrap();
        assert_eq!(env.lower, Polynomial::from_i64s(&[1, 2]));
        assert_eq!(env.upper, Polynomial::from_i64s(&[2, 1]));
        let x = rat(-1, 2);
        assert!(env.lower.eval(&x) <= env.upper.eval(&x));
    }

    #[test]
    fn straddling_domain_is_rejected() {
        let c = Enclosure::new(int(1), int(2)).unwrap();
        assert!(poly_with_interval_coeffs(&[c], &int(-1), &int(1)).is_err());
    }
}

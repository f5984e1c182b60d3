use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int, rat, Rational};
use crate::error::{domain, Result};

/// A dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` multiplies `x^i`. The vector never carries trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Builds a polynomial from `(numerator, denominator)` pairs.
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(dd) = divisor.degree() else {
            return domain("division by the zero polynomial");
        };
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // b is nonzero, so the division cannot fail.
            let r = a.rem(&b).unwrap_or_default();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots as `p`, all simple.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).map(|(q, _)| q).unwrap_or_else(|_| self.clone())
    }

    /// Coefficients of `self(center + y)` as a polynomial in `y`.
    pub fn taylor_shift(&self, center: &Rational) -> Polynomial {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * center;
                c[j] += t;
            }
        }
        Polynomial::new(c)
    }

    /// Lower bound of `self` on `[center - radius, center + radius]` from
    /// the centered form `p(c) - sum_{j>=1} |p_j(c)| r^j`.
    pub fn centered_lower_bound(&self, center: &Rational, radius: &Rational) -> Rational {
        let shifted = self.taylor_shift(center);
        let mut bound = shifted.coeff(0);
        let mut rpow = Rational::one();
        for c in shifted.coeffs.iter().skip(1) {
            rpow *= radius;
            bound -= c.abs() * &rpow;
        }
        bound
    }

    /// Rewrites an even polynomial `p(c)` as `q(c^2)`; `None` if an odd
    /// power is present.
    pub fn in_square(&self) -> Option<Polynomial> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * inner) + &Polynomial::constant(c.clone()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        text.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        let coeffs = text
            .iter()
            .map(|t| t.parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

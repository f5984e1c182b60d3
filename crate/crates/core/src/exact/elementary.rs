//! Rigorous rational enclosures of π, cos and sin.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int, Enclosure, Rational};
use crate::error::{domain, Result};

/// 40 correct decimals of π; the enclosure below has width 10^-38.
const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";

/// Enclosure of π of width `10^-38`.
pub fn pi_enclosure() -> Enclosure {
    let digits = &PI_DIGITS[..39];
    let numer: BigInt = digits.parse().unwrap_or_default();
    let denom = num_traits::pow(BigInt::from(10), 38);
    let lo = Rational::new(numer.clone(), denom.clone());
    let hi = Rational::new(numer + BigInt::one(), denom);
    Enclosure::new(lo, hi).unwrap_or_else(|_| Enclosure::point(int(3)))
}

const SERIES_DIGITS: usize = 45;

/// Alternating Taylor series of cos (`odd = false`) or sin (`odd = true`) at
/// an exact point with `|x| <= 4`, enclosed using the first omitted term.
fn taylor_point(x: &Rational, odd: bool) -> Enclosure {
    let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), SERIES_DIGITS));
    let x2 = x * x;
    let mut term = if odd { x.clone() } else { Rational::one() };
    let mut k: i64 = if odd { 1 } else { 0 };
    let mut sum = Rational::zero();
    loop {
        sum += &term;
        let next = -&term * &x2 / int((k + 1) * (k + 2));
        k += 2;
        // Terms decrease in magnitude once k exceeds |x|, so the remainder
        // is bounded by the first omitted term.
        if k > 4 && next.abs() < tol {
            let r = next.abs();
            return Enclosure::new(&sum - &r, &sum + &r)
                .unwrap_or_else(|_| Enclosure::point(sum.clone()))
                .round_outward(SERIES_DIGITS);
        }
        term = next;
    }
}

fn check_range(x: &Enclosure, lo: &Rational, hi: &Rational, what: &str) -> Result<()> {
    if x.lo() < lo || x.hi() > hi {
        return domain(format!("{what} enclosure argument {x} outside supported range"));
    }
    Ok(())
}

/// Enclosure of `cos(x)` for every `x` in the argument, which must lie in
/// `[-π, π]` without straddling zero.
pub fn cos_enclosure(x: &Enclosure) -> Result<Enclosure> {
    let pi = pi_enclosure();
    if x.hi().is_positive() && x.lo().is_negative() {
        return domain("cos enclosure argument straddles zero");
    }
    let x = if x.hi().is_positive() { x.clone() } else { -x };
    check_range(&x, &Rational::zero(), pi.lo(), "cos")?;
    // cos decreases on [0, π].
    let at_hi = taylor_point(x.hi(), false);
    let at_lo = taylor_point(x.lo(), false);
    Enclosure::new(at_hi.lo().clone(), at_lo.hi().clone())
}

/// Enclosure of `sin(x)` for `x` inside `[0, π/2]`.
pub fn sin_enclosure(x: &Enclosure) -> Result<Enclosure> {
    let half_pi = pi_enclosure().scale(&super::half());
    check_range(x, &Rational::zero(), half_pi.lo(), "sin")?;
    let at_lo = taylor_point(x.lo(), true);
    let at_hi = taylor_point(x.hi(), true);
    Enclosure::new(at_lo.lo().clone(), at_hi.hi().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, to_f64};

    #[test]
    fn pi_is_enclosed() {
        let pi = pi_enclosure();
        let (lo, hi) = pi.to_f64_bounds();
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi);
        assert!(to_f64(&pi.width()) <= 1.01e-38);
    }

    #[test]
    fn cos_of_third_pi_contains_half() {
        let arg = pi_enclosure().scale(&rat(1, 3));
        let c = cos_enclosure(&arg).unwrap();
        assert!(c.contains(&rat(1, 2)));
        assert!(to_f64(&c.width()) < 1e-36);
    }

    #[test]
    fn negative_arguments_use_evenness() {
        let arg = pi_enclosure().scale(&rat(-7, 27));
        let c = cos_enclosure(&arg).unwrap();
        let expected = (7.0 * std::f64::consts::PI / 27.0).cos();
        assert!((to_f64(c.lo()) - expected).abs() < 1e-15);
    }

    #[test]
    fn sin_of_sixth_pi_contains_half() {
        let arg = pi_enclosure().scale(&rat(1, 6));
        assert!(sin_enclosure(&arg).unwrap().contains(&rat(1, 2)));
    }

    #[test]
    fn out_of_range_is_rejected() {
        let arg = Enclosure::new(rat(-1, 10), rat(1, 10)).unwrap();
        assert!(cos_enclosure(&arg).is_err());
        assert!(sin_enclosure(&Enclosure::point(rat(2, 1))).is_err());
    }
}

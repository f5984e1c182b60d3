use serde::Serialize;

use super::{rat_sign, Polynomial, Rational};
use crate::error::{domain, Result};

/// Sturm sequence of the squarefree part of a polynomial.
///
/// `chain[0]` is the squarefree part, `chain[1]` its derivative and every
/// later entry the negated remainder of the two before it. The last entry is
/// a nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

/// Builds the Sturm chain of `p`.
pub fn sturm_chain(p: &Polynomial) -> Result<SturmChain> {
    if p.is_zero() {
        return domain("Sturm chain of the zero polynomial");
    }
    let p0 = p.squarefree_part();
    let mut chain = vec![p0.clone()];
    let p1 = p0.derivative();
    if p1.is_zero() {
        return Ok(SturmChain { chain });
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    Ok(SturmChain { chain })
}

impl SturmChain {
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// The squarefree polynomial whose roots are counted.
    pub fn base(&self) -> &Polynomial {
        &self.chain[0]
    }

    /// Sign variations of the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| rat_sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let s = rat_sign(&p.leading());
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in `(a, b]`, i.e. `V(a) - V(b)`.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> Result<usize> {
        count_roots_in(self, a, b)
    }

    /// Number of distinct real roots on the whole line.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `chain.base()` in the half-open interval
/// `(a, b]`.
///
/// Sturm's theorem with zeros dropped from the sign sequence counts `(a, b]`
/// exactly even when `a` or `b` is itself a root, so no endpoint adjustment
/// is applied.
pub fn count_roots_in(chain: &SturmChain, a: &Rational, b: &Rational) -> Result<usize> {
    if a >= b {
        return domain(format!("empty interval ({a}, {b}]"));
    }
    let va = chain.variations(a);
    let vb = chain.variations(b);
    Ok(va.saturating_sub(vb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn chain_of_x_squared_minus_two() {
        let chain = sturm_chain(&Polynomial::from_i64s(&[-2, 0, 1])).unwrap();
        assert_eq!(
            chain.polynomials(),
            &[
                Polynomial::from_i64s(&[-2, 0, 1]),
                Polynomial::from_i64s(&[0, 2]),
                Polynomial::from_i64s(&[2]),
            ]
        );
    }

    #[test]
    fn chain_of_cubic_ends_in_positive_constant() {
        let chain = sturm_chain(&Polynomial::from_i64s(&[0, -1, 0, 1])).unwrap();
        assert_eq!(chain.len(), 4);
        let last = chain.polynomials().last().unwrap();
        assert_eq!(last.degree(), Some(0));
        assert!(last.leading() > int(0));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(sturm_chain(&Polynomial::zero()).is_err());
    }

    #[test]
    fn counts_roots_of_cubic() {
        let chain = sturm_chain(&Polynomial::from_i64s(&[0, -1, 0, 1])).unwrap();
        assert_eq!(chain.count_roots_in(&int(-2), &int(2)).unwrap(), 3);
        assert_eq!(chain.count_roots_in(&rat(1, 2), &int(2)).unwrap(), 1);
        assert_eq!(chain.real_root_count(), 3);
    }

    #[test]
    fn root_endpoints_follow_half_open_convention() {
        let chain = sturm_chain(&Polynomial::from_i64s(&[0, -1, 0, 1])).unwrap();
        // (-1, 1] holds 0 and 1 but not -1.
        assert_eq!(chain.count_roots_in(&int(-1), &int(1)).unwrap(), 2);
        assert_eq!(chain.count_roots_in(&int(0), &int(1)).unwrap(), 1);
        assert_eq!(chain.count_roots_in(&rat(-1, 2), &int(0)).unwrap(), 1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x - 1)^3 (x + 1)
        let p = &Polynomial::from_i64s(&[-1, 3, -3, 1]) * &Polynomial::from_i64s(&[1, 1]);
        let chain = sturm_chain(&p).unwrap();
        assert_eq!(chain.count_roots_in(&int(-5), &int(5)).unwrap(), 2);
    }

    #[test]
    fn inverted_interval_is_an_error() {
        let chain = sturm_chain(&Polynomial::x()).unwrap();
        assert!(chain.count_roots_in(&int(1), &int(1)).is_err());
        assert!(chain.count_roots_in(&int(2), &int(1)).is_err());
    }

    #[test]
    fn q1_has_no_roots_in_unit_interval() {
        let q1 = Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1), (32, 1)]);
        let chain = sturm_chain(&q1).unwrap();
        assert_eq!(chain.variations(&int(0)), chain.variations(&int(1)));
    }
}

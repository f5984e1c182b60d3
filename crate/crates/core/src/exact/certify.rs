use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{half, sturm_chain, Enclosure, Polynomial, Rational};
use crate::error::{domain, Result};

/// How a positivity claim was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Sturm,
    IntervalSubdivision,
    LipschitzGrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    Refuted,
    Inconclusive,
}

/// Evidence that a polynomial is not strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// An exact point where the polynomial is `<= 0`.
    Point(#[serde(with = "super::rational_serde")] Rational),
    /// An interval proven (by a Sturm count) to contain a root.
    RootBracket(Enclosure),
}

/// Record of a strict-positivity claim for a polynomial on `[a, b]`.
///
/// `status == Certified` implies `margin > 0` and the polynomial is at least
/// `margin` everywhere on the interval. A `Refuted` certificate always
/// carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub target: String,
    pub interval: Enclosure,
    pub method: Method,
    #[serde(with = "super::rational_serde")]
    pub margin: Rational,
    pub status: Status,
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    /// Re-checks the stored witness against `p`.
    pub fn witness_holds(&self, p: &Polynomial) -> bool {
        match &self.witness {
            None => false,
            Some(Witness::Point(x)) => !p.eval(x).is_positive(),
            Some(Witness::RootBracket(e)) => {
                let Ok(chain) = sturm_chain(p) else { return true };
                if p.eval(e.lo()).is_zero() {
                    return true;
                }
                e.lo() < e.hi() && chain.count_roots_in(e.lo(), e.hi()).unwrap_or(0) > 0
            }
        }
    }
}

const SUBDIVISION_DEPTH: usize = 48;
const MARGIN_DEPTH: usize = 200;
const WITNESS_STEPS: usize = 400;

/// Attempts to prove `p > 0` on the closed interval `[a, b]`.
///
/// Never returns `Certified` unless the claim is proven with exact
/// arithmetic; when the subdivision budget runs out the result is
/// `Inconclusive`.
pub fn certify_positive_poly(
    target: &str,
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    method: Method,
) -> Result<Certificate> {
    if a > b {
        return domain(format!("empty interval [{a}, {b}]"));
    }
    let interval = Enclosure::new(a.clone(), b.clone())?;
    let cert = |margin: Rational, status: Status, witness: Option<Witness>| Certificate {
        target: target.to_string(),
        interval: interval.clone(),
        method,
        margin,
        status,
        witness,
    };

    for x in [a, b] {
        let v = p.eval(x);
        if !v.is_positive() {
            return Ok(cert(v, Status::Refuted, Some(Witness::Point(x.clone()))));
        }
    }
    if p.degree().unwrap_or(0) == 0 || a == b {
        return Ok(cert(p.eval(a), Status::Certified, None));
    }

    match method {
        Method::Sturm => {
            let chain = sturm_chain(p)?;
            if chain.count_roots_in(a, b)? == 0 {
                let margin = proven_minimum(p, a, b);
                return Ok(if margin.is_positive() {
                    cert(margin, Status::Certified, None)
                } else {
                    cert(margin, Status::Inconclusive, None)
                });
            }
            let (margin, witness) = locate_witness(p, a, b)?;
            Ok(cert(margin, Status::Refuted, Some(witness)))
        }
        Method::IntervalSubdivision | Method::LipschitzGrid => subdivide(p, a, b, &cert),
    }
}

/// Proven lower bound of `p` on `[a, b]` assuming `p` has no roots there.
///
/// On pieces free of critical points the minimum sits at an endpoint; the
/// remaining pieces are bounded by the centered form and split until that
/// bound turns positive.
fn proven_minimum(p: &Polynomial, a: &Rational, b: &Rational) -> Rational {
    let dp = p.derivative();
    let dchain = match sturm_chain(&dp) {
        Ok(c) => c,
        Err(_) => return p.eval(a).min(p.eval(b)),
    };
    let mut best: Option<Rational> = None;
    let mut stack = vec![(a.clone(), b.clone(), 0usize)];
    while let Some((l, r, depth)) = stack.pop() {
        let piece_min = if dchain.count_roots_in(&l, &r).unwrap_or(1) == 0 {
            Some(p.eval(&l).min(p.eval(&r)))
        } else {
            let mid = (&l + &r) * half();
            let lb = p.centered_lower_bound(&mid, &((&r - &l) * half()));
            if lb.is_positive() || depth >= MARGIN_DEPTH {
                Some(lb)
            } else {
                stack.push((l, mid.clone(), depth + 1));
                stack.push((mid, r, depth + 1));
                None
            }
        };
        if let Some(m) = piece_min {
            best = Some(match best {
                Some(b) if b <= m => b,
                _ => m,
            });
        }
    }
    best.unwrap_or_else(Rational::zero)
}

/// Finds evidence for a root of `p` inside `(a, b]`.
fn locate_witness(p: &Polynomial, a: &Rational, b: &Rational) -> Result<(Rational, Witness)> {
    let chain = sturm_chain(p)?;
    let (mut l, mut r) = (a.clone(), b.clone());
    for _ in 0..WITNESS_STEPS {
        let mid = (&l + &r) * half();
        let v = p.eval(&mid);
        if !v.is_positive() {
            return Ok((v, Witness::Point(mid)));
        }
        if chain.count_roots_in(&l, &mid)? > 0 {
            r = mid;
        } else {
            l = mid;
        }
    }
    // Even-multiplicity irrational root: p touches zero without changing sign.
    Ok((Rational::zero(), Witness::RootBracket(Enclosure::new(l, r)?)))
}

fn subdivide(
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    cert: &dyn Fn(Rational, Status, Option<Witness>) -> Certificate,
) -> Result<Certificate> {
    let mut margin: Option<Rational> = None;
    let mut exhausted = false;
    let mut stack = vec![(a.clone(), b.clone(), 0usize)];
    while let Some((l, r, depth)) = stack.pop() {
        let mid = (&l + &r) * half();
        let lb = p.centered_lower_bound(&mid, &((&r - &l) * half()));
        if lb.is_positive() {
            margin = Some(match margin {
                Some(m) if m <= lb => m,
                _ => lb,
            });
            continue;
        }
        let v = p.eval(&mid);
        if !v.is_positive() {
            return Ok(cert(v, Status::Refuted, Some(Witness::Point(mid))));
        }
        if depth >= SUBDIVISION_DEPTH {
            exhausted = true;
            margin = Some(match margin {
                Some(m) if m <= lb => m,
                _ => lb,
            });
            continue;
        }
        stack.push((mid.clone(), r, depth + 1));
        stack.push((l, mid, depth + 1));
    }
    let margin = margin.unwrap_or_else(Rational::zero);
    if exhausted {
        Ok(cert(margin, Status::Inconclusive, None))
    } else {
        Ok(cert(margin, Status::Certified, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q1() -> Polynomial {
        Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1), (32, 1)])
    }

    #[test]
    fn q1_positive_on_unit_interval() {
        for method in [Method::Sturm, Method::IntervalSubdivision] {
            let c = certify_positive_poly("q1", &q1(), &int(0), &int(1), method).unwrap();
            assert_eq!(c.status, Status::Certified, "{method:?}");
            assert!(c.margin > int(0));
            assert!(c.margin <= rat(1, 2));
        }
    }

    #[test]
    fn sturm_margin_is_a_true_lower_bound() {
        let c = certify_positive_poly("q1", &q1(), &int(0), &int(1), Method::Sturm).unwrap();
        for k in 0..=1000 {
            assert!(q1().eval(&rat(k, 1000)) >= c.margin);
        }
    }

    #[test]
    fn double_root_is_refuted() {
        let p = Polynomial::from_i64s(&[1, -4, 4]);
        for method in [Method::Sturm, Method::IntervalSubdivision] {
            let c = certify_positive_poly("sq", &p, &int(0), &int(1), method).unwrap();
            assert_eq!(c.status, Status::Refuted);
            assert_eq!(c.witness, Some(Witness::Point(rat(1, 2))));
            assert!(c.witness_holds(&p));
        }
    }

    #[test]
    fn irrational_double_root_gets_a_bracket() {
        // (x^2 - 2)^2 touches zero at sqrt(2) without changing sign.
        let base = Polynomial::from_i64s(&[-2, 0, 1]);
        let p = &base * &base;
        let c = certify_positive_poly("touch", &p, &int(1), &int(2), Method::Sturm).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert!(matches!(c.witness, Some(Witness::RootBracket(_))));
        assert!(c.witness_holds(&p));
    }

    #[test]
    fn sign_change_gives_point_witness() {
        let p = Polynomial::from_i64s(&[-2, 0, 1]);
        let c = certify_positive_poly("x2m2", &p, &int(1), &int(2), Method::Sturm).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert!(matches!(c.witness, Some(Witness::Point(_))));
        assert!(c.witness_holds(&p));
    }

    #[test]
    fn subdivision_gives_up_honestly() {
        // Positive but with a minimum of 1e-40, below what 48 halvings resolve.
        let eps = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 40));
        let p = &Polynomial::from_ratios(&[(1, 9), (-2, 3), (1, 1)]) + &Polynomial::constant(eps);
        let c = certify_positive_poly("tight", &p, &int(0), &int(1), Method::IntervalSubdivision)
            .unwrap();
        assert_ne!(c.status, Status::Certified);
        let s = certify_positive_poly("tight", &p, &int(0), &int(1), Method::Sturm).unwrap();
        assert_eq!(s.status, Status::Certified);
    }

    #[test]
    fn endpoint_zero_is_refuted() {
        let p = Polynomial::x();
        let c = certify_positive_poly("x", &p, &int(0), &int(1), Method::Sturm).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert_eq!(c.witness, Some(Witness::Point(int(0))));
    }

    #[test]
    fn empty_interval_is_an_error() {
        assert!(certify_positive_poly("x", &q1(), &int(1), &int(0), Method::Sturm).is_err());
    }
}

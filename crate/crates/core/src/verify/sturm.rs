use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Check;
use crate::error::Result;
use crate::exact::{
    certify_positive_poly, cos_enclosure, int, pi_enclosure, rat, sturm_chain, to_f64, Enclosure,
    IntervalPolynomial, Method, Polynomial, Rational,
};
use crate::trig::{case_p, case_q, case_r, reduce_to_polynomial, Substitution};

pub fn q1() -> Polynomial {
    Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1), (32, 1)])
}

pub fn q2() -> Polynomial {
    Polynomial::from_ratios(&[(7, 8), (-39, 2), (380, 1), (-1984, 1), (4320, 1), (-4224, 1), (1536, 1)])
}

pub fn q3() -> Polynomial {
    Polynomial::from_ratios(&[
        (9, 16),
        (147, 4),
        (-1270, 1),
        (16496, 1),
        (-98640, 1),
        (316096, 1),
        (-580864, 1),
        (614400, 1),
        (-348160, 1),
        (81920, 1),
    ])
}

/// Left end of the stated `q_3` interval.
pub fn q3_stated_lo() -> Rational {
    rat(37059, 100000)
}

/// Lower end of an enclosure of `cos²(7π/24)`.
pub fn q3_derived_lo() -> Result<Rational> {
    let c = cos_enclosure(&pi_enclosure().scale(&rat(7, 24)))?;
    Ok(c.lo() * c.lo())
}

/// Distinct roots of `p` in the closed interval `[a, b]`.
pub fn roots_in_closed(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let left = usize::from(p.eval(a).is_zero());
    if a == b {
        return Ok(left);
    }
    Ok(chain.count_roots_in(a, b)? + left)
}

/// Distinct roots of `p` in the open interval `(a, b)`.
pub fn roots_in_open(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize> {
    let chain = sturm_chain(p)?;
    Ok(chain.count_roots_in(a, b)? - usize::from(p.eval(b).is_zero()))
}

/// Root counts of the two envelopes of a polynomial family on `[a, b]` and
/// the sign they force on every member (0 when neither envelope decides it).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRoots {
    pub interval: (f64, f64),
    pub lower_roots: usize,
    pub upper_roots: usize,
    pub sign: i8,
}

impl FamilyRoots {
    pub fn root_free(&self) -> bool {
        self.sign != 0
    }
}

pub fn family_roots(poly: &IntervalPolynomial, a: &Rational, b: &Rational) -> Result<FamilyRoots> {
    let env = poly.envelopes(a, b)?;
    let lower_roots = roots_in_closed(&env.lower, a, b)?;
    let upper_roots = roots_in_closed(&env.upper, a, b)?;
    let sign = if lower_roots == 0 && env.lower.eval(a).is_positive() {
        1
    } else if upper_roots == 0 && env.upper.eval(a).is_negative() {
        -1
    } else {
        0
    };
    Ok(FamilyRoots { interval: (to_f64(a), to_f64(b)), lower_roots, upper_roots, sign })
}

fn sign_name(s: i8) -> &'static str {
    match s {
        1 => "positive",
        -1 => "negative",
        _ => "undecided",
    }
}

fn value_check(id: &str, e: &Enclosure) -> Check {
    let (lo, hi) = e.to_f64_bounds();
    let mid = 0.5 * (lo + hi);
    let c = if e.is_positive() { Check::pass(id) } else { Check::fail(id) };
    c.with_value(mid, 0.5 * (hi - lo)).detail(format!("enclosure [{lo:e}, {hi:e}]"))
}

fn root_check(id: &str, roots: usize, interval: (f64, f64)) -> Check {
    let c = if roots == 0 { Check::pass(id) } else { Check::fail(id) };
    c.with_value(roots as f64, 0.0)
        .detail(format!("{roots} distinct roots on [{:.10}, {:.10}]", interval.0, interval.1))
}

/// Root count and endpoint sign checks for one of `q_1`, `q_2`, `q_3`.
pub fn q_checks(name: &str) -> Result<Vec<Check>> {
    let (p, a, open, b) = match name {
        "q1" => (q1(), int(0), true, int(1)),
        "q2" => (q2(), int(0), true, int(1)),
        "q3" => (q3(), q3_stated_lo(), false, int(1)),
        "q3-derived" => (q3(), q3_derived_lo()?, false, int(1)),
        _ => return crate::error::domain(format!("unknown polynomial {name}")),
    };
    let roots = if open { roots_in_open(&p, &a, &b)? } else { roots_in_closed(&p, &a, &b)? };
    let base = name.trim_end_matches("-derived");
    let mut out = vec![root_check(&format!("{name}:roots"), roots, (to_f64(&a), to_f64(&b)))];
    let end = if open { &a } else { &b };
    out.push(value_check(&format!("{name}:{base}({}) > 0", to_f64(end)), &Enclosure::point(p.eval(end))));
    let cert = certify_positive_poly(name, &p, &a, &b, Method::Sturm)?;
    out.push(
        if cert.is_certified() { Check::pass(format!("{name}:positive")) } else { Check::fail(format!("{name}:positive")) }
            .with_value(to_f64(&cert.margin), 0.0)
            .detail(format!("proven lower bound on [{:.10}, {:.10}]", to_f64(&a), to_f64(&b))),
    );
    Ok(out)
}

/// `cos(k π)` enclosure for a rational `k` in `(0, 1)`.
fn cos_pi(k: Rational) -> Result<Enclosure> {
    cos_enclosure(&pi_enclosure().scale(&k))
}

/// Checks of the `P` lower bound with `μ` ranging over `mu`.
///
/// `P` is reduced to a polynomial in `c = cos t`. The `t` intervals
/// `(-π/3, -7π/27]` and `[-π/5, 0]` map to `c ∈ (1/2, cos 7π/27]` and
/// `[cos π/5, 1]`; both are widened outward to closed rational intervals.
pub fn p_checks(mu: &Enclosure) -> Result<Vec<Check>> {
    let red = reduce_to_polynomial(&case_p(mu), &Substitution::cos(int(1), int(0)))?;
    let poly = &red.poly;
    let mut out = Vec::new();
    let first = family_roots(poly, &rat(1, 2), cos_pi(rat(7, 27))?.hi())?;
    out.push(
        root_check("P:roots(-pi/3,-7pi/27]", first.lower_roots.max(first.upper_roots), first.interval)
            .status_if(first.root_free())
            .detail(format!(
                "envelope roots {} / {}, family {} on c in [{:.10}, {:.10}]",
                first.lower_roots,
                first.upper_roots,
                sign_name(first.sign),
                first.interval.0,
                first.interval.1
            )),
    );
    let second = family_roots(poly, cos_pi(rat(1, 5))?.lo(), &int(1))?;
    out.push(
        root_check("P:roots[-pi/5,0]", second.lower_roots.max(second.upper_roots), second.interval)
            .status_if(second.root_free())
            .detail(format!(
                "envelope roots {} / {}, family {} on c in [{:.10}, {:.10}]",
                second.lower_roots,
                second.upper_roots,
                sign_name(second.sign),
                second.interval.0,
                second.interval.1
            )),
    );
    out.push(value_check("P:P(0) > 0", &poly.eval(&int(1))));
    out.push(value_check("P:P(-pi/3) > 0", &poly.eval(&rat(1, 2))));
    Ok(out)
}

/// Checks of `Q` (`n = 2`) or `R` (`n = 3`) on `t ∈ (π/3, π/2]`, i.e.
/// `c = cos t ∈ [0, 1/2)`, widened to `[0, 1/2]`. The reduction carries the
/// factor `sin t > 0`.
pub fn qr_checks(name: &str, mu: &Enclosure) -> Result<Vec<Check>> {
    let sum = match name {
        "Q" => case_q(mu),
        "R" => case_r(mu),
        _ => return crate::error::domain(format!("unknown case {name}")),
    };
    let red = reduce_to_polynomial(&sum, &Substitution::cos(int(1), int(0)))?;
    let fam = family_roots(&red.poly, &int(0), &rat(1, 2))?;
    Ok(vec![
        root_check(&format!("{name}:roots(pi/3,pi/2]"), fam.lower_roots.max(fam.upper_roots), fam.interval)
            .status_if(fam.root_free())
            .detail(format!(
                "envelope roots {} / {}, family {} on c in [0, 1/2]",
                fam.lower_roots,
                fam.upper_roots,
                sign_name(fam.sign)
            )),
        value_check(&format!("{name}:{name}(pi/2) > 0"), &red.poly.eval(&int(0))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Polynomial;

    #[test]
    fn closed_and_open_counts() {
        // x(x - 1)
        let p = Polynomial::from_i64s(&[0, -1, 1]);
        assert_eq!(roots_in_closed(&p, &int(0), &int(1)).unwrap(), 2);
        assert_eq!(roots_in_open(&p, &int(0), &int(1)).unwrap(), 0);
    }

    #[test]
    fn derived_q3_end_is_near_stated_one() {
        let lo = to_f64(&q3_derived_lo().unwrap());
        assert!((lo - 0.37059).abs() < 1e-4);
    }

    #[test]
    fn q_polynomials_are_root_free() {
        for name in ["q1", "q2", "q3", "q3-derived"] {
            for c in q_checks(name).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}

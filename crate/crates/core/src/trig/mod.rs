//! The trigonometric sums of the positivity proofs, their Pochhammer
//! coefficients and their reduction to algebraic polynomials.

mod chebyshev;
mod reduce;
mod sum;

pub use chebyshev::{chebyshev_t, chebyshev_u};
pub use reduce::{reduce_to_polynomial, Prefactor, Reduction, Substitution};
pub use sum::{reduce_phase, Evaluation, Jet, TrigKind, TrigSum, TrigTerm};

use crate::exact::{int, rat, Enclosure, Rational};

/// Decimal digits kept when rounding coefficient enclosures outward.
const COEFF_DIGITS: usize = 40;

/// Enclosure of `(μ)_k / k!`. Exact when `mu` is a point.
pub fn pochhammer_coeff(mu: &Enclosure, k: usize) -> Enclosure {
    pochhammer_coeffs(mu, k).pop().unwrap_or_else(|| Enclosure::point(int(1)))
}

/// `d_0, ..., d_n` with `d_k = (μ)_k / k!`, built by `d_{k+1} = d_k (μ + k)/(k + 1)`.
pub fn pochhammer_coeffs(mu: &Enclosure, n: usize) -> Vec<Enclosure> {
    let mut out = Vec::with_capacity(n + 1);
    let mut d = Enclosure::point(int(1));
    out.push(d.clone());
    for k in 0..n {
        let factor = (mu + &Enclosure::point(int(k as i64))).scale(&rat(1, k as i64 + 1));
        d = &d * &factor;
        if !d.is_point() {
            d = d.round_outward(COEFF_DIGITS);
        }
        out.push(d.clone());
    }
    out
}

fn term(coeff: Enclosure, freq: Rational, phase: Rational, kind: TrigKind) -> TrigTerm {
    TrigTerm::new(coeff, freq, phase, kind)
}

/// `𝔘_n(φ) = Σ d_k cos((2k + 1/3)φ - π/6)`.
pub fn build_u_n(n: usize, mu: &Enclosure) -> TrigSum {
    let terms = pochhammer_coeffs(mu, n)
        .into_iter()
        .enumerate()
        .map(|(k, d)| term(d, int(2 * k as i64) + rat(1, 3), rat(-1, 6), TrigKind::Cos))
        .collect();
    TrigSum::new(format!("U_{n}"), terms)
}

/// `ς_n(ρ, μ, θ) = Σ d_k sin((2k + ρ)θ)`.
pub fn build_varsigma(n: usize, rho: &Rational, mu: &Enclosure) -> TrigSum {
    let terms = pochhammer_coeffs(mu, n)
        .into_iter()
        .enumerate()
        .map(|(k, d)| term(d, int(2 * k as i64) + rho, int(0), TrigKind::Sin))
        .collect();
    TrigSum::new(format!("varsigma_{n}"), terms)
}

/// `ℓ_n(ρ, μ, θ) = Σ d_k cos((2k + ρ)θ - (ρ - 1/2)π)`, which equals
/// `ς_n(ρ, μ, π - θ)`.
pub fn build_ell(n: usize, rho: &Rational, mu: &Enclosure) -> TrigSum {
    let phase = rat(1, 2) - rho;
    let terms = pochhammer_coeffs(mu, n)
        .into_iter()
        .enumerate()
        .map(|(k, d)| term(d, int(2 * k as i64) + rho, phase.clone(), TrigKind::Cos))
        .collect();
    TrigSum::new(format!("ell_{n}"), terms)
}

/// `ω_n(θ) = Σ (1/2)_k/k! sin((2k + 1/3)θ)`, exact coefficients.
pub fn build_omega(n: usize) -> TrigSum {
    build_varsigma(n, &rat(1, 3), &Enclosure::point(rat(1, 2))).with_label(format!("omega_{n}"))
}

/// The lower bound `P(t) = -d_2 + cos t + (1 - d_1) cos 2t + (d_2 - d_1) cos 5t`
/// for `2 sin φ 𝔘_n(φ)`, in the variable `t = (2φ - π)/3`.
pub fn case_p(mu: &Enclosure) -> TrigSum {
    let d = pochhammer_coeffs(mu, 2);
    let one = Enclosure::point(int(1));
    let terms = vec![
        term(-&d[2], int(0), int(0), TrigKind::Cos),
        term(one.clone(), int(1), int(0), TrigKind::Cos),
        term(&one - &d[1], int(2), int(0), TrigKind::Cos),
        term(&d[2] - &d[1], int(5), int(0), TrigKind::Cos),
    ];
    TrigSum::new("P", terms)
}

/// `𝔘_2` in the variable `t = (φ + π)/3`: `sin t + μ sin 7t + d_2 sin 13t`.
pub fn case_q(mu: &Enclosure) -> TrigSum {
    u_n_in_t(2, mu).with_label("Q")
}

/// `𝔘_3` in the variable `t = (φ + π)/3`.
pub fn case_r(mu: &Enclosure) -> TrigSum {
    u_n_in_t(3, mu).with_label("R")
}

/// `𝔘_n(3t - π)` rewritten as a sine series in `t`.
pub fn u_n_in_t(n: usize, mu: &Enclosure) -> TrigSum {
    build_u_n(n, mu).substitute(&int(3), &int(-1))
}

/// The `n = 1` closed form
/// `(1 - d_1) sin(φ/3 + π/3) + 2 d_1 sin(4φ/3 + π/3) cos φ`.
pub fn u_1_closed_form(mu: f64, phi: f64) -> f64 {
    use std::f64::consts::PI;
    (1.0 - mu) * (phi / 3.0 + PI / 3.0).sin() + 2.0 * mu * (4.0 * phi / 3.0 + PI / 3.0).sin() * phi.cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Polynomial;
    use std::f64::consts::PI;

    fn half() -> Enclosure {
        Enclosure::point(rat(1, 2))
    }

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer_coeff(&half(), 2), Enclosure::point(rat(3, 8)));
        assert_eq!(pochhammer_coeff(&half(), 0), Enclosure::point(int(1)));
        let mu = Enclosure::new(rat(8468555682, 10_000_000_000), rat(8468555684, 10_000_000_000)).unwrap();
        let d1 = pochhammer_coeff(&mu, 1);
        assert!(d1.subset_of(&mu));
    }

    #[test]
    fn pochhammer_ratio_is_exact() {
        let mu = Enclosure::point(rat(2, 7));
        let d = pochhammer_coeffs(&mu, 30);
        for k in 0..30 {
            let ratio = d[k + 1].lo() / d[k].lo();
            assert_eq!(ratio, (rat(2, 7) + int(k as i64)) / int(k as i64 + 1));
        }
    }

    #[test]
    fn u0_is_single_cosine() {
        let s = build_u_n(0, &half());
        assert_eq!(s.len(), 1);
        assert!((s.value(1.0) - (1.0 / 3.0 - PI / 6.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn u1_matches_closed_form() {
        let mu = 0.8468555683;
        let s = build_u_n(1, &Enclosure::from_f64(mu, 0.0).unwrap());
        for phi in [PI / 2.0, 0.3, 1.1, 2.9] {
            assert!((s.value(phi) - u_1_closed_form(mu, phi)).abs() < 1e-14);
        }
    }

    #[test]
    fn u_n_is_symmetric() {
        let s = build_u_n(7, &Enclosure::point(rat(3, 5)));
        for i in 1..40 {
            let phi = i as f64 * PI / 40.0;
            assert!((s.value(phi) - s.value(PI - phi)).abs() < 1e-13);
        }
    }

    #[test]
    fn ell_is_reflected_varsigma() {
        let rho = rat(1, 3);
        let mu = Enclosure::point(rat(1, 2));
        let v = build_varsigma(4, &rho, &mu);
        let l = build_ell(4, &rho, &mu);
        for i in 0..50 {
            let th = 0.06 * i as f64;
            assert!((v.value(PI - th) - l.value(th)).abs() < 1e-13);
        }
    }

    #[test]
    fn q_and_r_are_sine_series_in_t() {
        let mu = Enclosure::point(rat(4, 5));
        let q = case_q(&mu);
        assert!(q.terms().iter().all(|t| t.kind == TrigKind::Sin && t.phase == int(0)));
        let freqs: Vec<_> = q.terms().iter().map(|t| t.freq.clone()).collect();
        assert_eq!(freqs, vec![int(1), int(7), int(13)]);
        let u2 = build_u_n(2, &mu);
        for i in 1..30 {
            let t = PI / 3.0 + i as f64 * 0.02;
            assert!((q.value(t) - u2.value(3.0 * t - PI)).abs() < 1e-13);
        }
        assert_eq!(case_r(&mu).len(), 4);
    }

    #[test]
    fn p_at_minus_third_pi() {
        let mu = Enclosure::point(rat(4, 5));
        let p = case_p(&mu);
        let d2 = 0.8 * 1.8 / 2.0;
        assert!((p.value(-PI / 3.0) + d2 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn omega_reductions_reproduce_q_polynomials() {
        let q1 = Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1), (32, 1)]);
        let q2 = Polynomial::from_ratios(&[
            (7, 8),
            (-39, 2),
            (380, 1),
            (-1984, 1),
            (4320, 1),
            (-4224, 1),
            (1536, 1),
        ]);
        for (n, q) in [(1, q1), (2, q2)] {
            let red = reduce_to_polynomial(&build_omega(n), &Substitution::omega()).unwrap();
            assert_eq!(red.prefactor, Prefactor::SinS);
            assert_eq!(red.poly.as_exact().unwrap(), q);
        }
    }
}

//! Integrals `∫₀ˣ g(t + η) t^{μ-1} dt` with `g ∈ {sin, cos}`.
//!
//! The first panel is mapped by `t = u^{1/μ}`, which removes the endpoint
//! singularity; the rest of the range is cut into panels of length at most
//! `π/4` and integrated by adaptive Gauss–Kronrod (7/15 points).

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{int, rat_from_f64, to_f64, Rational};
use crate::trig::TrigKind;

/// A value with an absolute error estimate.
///
/// `converged` is false when the requested tolerance was not met; `err` is
/// then the best estimate reached, not the requested tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err: f64,
    pub converged: bool,
}

impl QuadResult {
    pub fn exact(value: f64) -> Self {
        Self { value, err: 0.0, converged: true }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.err
    }

    /// Scales by an exactly known positive or negative factor `k`, allowing
    /// for the rounding of the product.
    pub fn scale(&self, k: f64) -> Self {
        let value = self.value * k;
        Self {
            value,
            err: self.err * k.abs() * (1.0 + 2.0 * f64::EPSILON) + f64::EPSILON * value.abs(),
            converged: self.converged,
        }
    }
}

impl Add for QuadResult {
    type Output = QuadResult;
    fn add(self, o: QuadResult) -> QuadResult {
        let value = self.value + o.value;
        QuadResult {
            value,
            err: self.err + o.err + f64::EPSILON * value.abs(),
            converged: self.converged && o.converged,
        }
    }
}

impl Sub for QuadResult {
    type Output = QuadResult;
    fn sub(self, o: QuadResult) -> QuadResult {
        self + (-o)
    }
}

impl Neg for QuadResult {
    type Output = QuadResult;
    fn neg(self) -> QuadResult {
        QuadResult { value: -self.value, ..self }
    }
}

/// Default tolerance for callers that do not pick one.
pub const DEFAULT_TOL: f64 = 1e-13;

const PANEL: f64 = PI / 4.0;
const MAX_SPLITS: usize = 200;
const ROUNDING: f64 = 50.0 * f64::EPSILON;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Rule {
    kronrod: f64,
    gauss: f64,
    abs: f64,
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Rule {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = (fc * WGK[7]).abs();
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Rule { kronrod: k * h, gauss: g * h, abs: abs * h.abs() }
}

/// Global adaptive integration: always split the panel with the largest
/// error estimate until the total estimate meets `tol` or the subdivision
/// budget runs out.
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadResult {
    struct Piece {
        l: f64,
        r: f64,
        rule: Rule,
        err: f64,
    }
    let make = |l: f64, r: f64| {
        let rule = gk15(f, l, r);
        let err = (rule.kronrod - rule.gauss).abs();
        Piece { l, r, rule, err }
    };
    let mut pieces = vec![make(a, b)];
    for _ in 0..MAX_SPLITS {
        let total: f64 = pieces.iter().map(|p| p.err).sum();
        if total <= tol {
            break;
        }
        // Pieces whose estimate is already at rounding level gain nothing
        // from splitting.
        let worst = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.err > ROUNDING * p.rule.abs)
            .max_by(|a, b| a.1.err.total_cmp(&b.1.err))
            .map(|(i, _)| i);
        let Some(worst) = worst else { break };
        let p = pieces.swap_remove(worst);
        let m = 0.5 * (p.l + p.r);
        if m <= p.l || m >= p.r {
            pieces.push(p);
            break;
        }
        pieces.push(make(p.l, m));
        pieces.push(make(m, p.r));
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for p in &pieces {
        value += p.rule.kronrod;
        err += p.err;
        magnitude += p.rule.abs;
    }
    let converged = err <= tol;
    // Rounding in the nodes, the integrand and the accumulation.
    err += ROUNDING * magnitude;
    QuadResult { value, err, converged }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu <= 1.0) {
        return domain(format!("mu = {mu} outside (0, 1]"));
    }
    Ok(())
}

/// `∫₀ˣ g(t + η) t^{μ-1} dt`.
pub fn fractional_osc_integral(kind: TrigKind, eta: f64, mu: f64, x: f64, tol: f64) -> Result<QuadResult> {
    check_mu(mu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("upper limit {x} must be finite and non-negative"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    if x == 0.0 {
        return Ok(QuadResult::exact(0.0));
    }
    let panels = (x / PANEL).ceil().max(1.0) as usize;
    let per_panel = tol / (panels as f64 + 1.0);

    let t1 = x.min(PANEL);
    let inv = 1.0 / mu;
    let head = move |u: f64| kind.apply(u.powf(inv) + eta) * inv;
    let mut total = adaptive(&head, 0.0, t1.powf(mu), per_panel);
    // Rounding of the mapped upper limit u₁ = t₁^μ moves the result by at
    // most |u₁ - fl(u₁)| times the integrand bound 1/μ.
    total.err += 2.0 * f64::EPSILON * t1.powf(mu) * inv;

    let body = move |t: f64| kind.apply(t + eta) * t.powf(mu - 1.0);
    let mut a = t1;
    while a < x {
        let b = (a + PANEL).min(x);
        total = total + adaptive(&body, a, b, per_panel);
        a = b;
    }
    total.converged = total.converged && total.err <= tol;
    Ok(total)
}

/// `S(x) = ∫₀ˣ sin t · t^{μ-1} dt`.
pub fn s_integral(mu: f64, x: f64, tol: f64) -> Result<QuadResult> {
    fractional_osc_integral(TrigKind::Sin, 0.0, mu, x, tol)
}

/// `C(x) = ∫₀ˣ cos t · t^{μ-1} dt`.
pub fn c_integral(mu: f64, x: f64, tol: f64) -> Result<QuadResult> {
    fractional_osc_integral(TrigKind::Cos, 0.0, mu, x, tol)
}

/// Largest upper limit accepted by [`series_reference`].
pub const SERIES_MAX_X: f64 = 4.0 * PI;

/// Power-series value of `∫₀ˣ g(t) t^{μ-1} dt`, summed in exact rational
/// arithmetic, so it shares no code path with the quadrature.
///
/// The series is `x^μ Σ (-1)^j x^{2j+e} / ((2j+e)! (2j+e+μ))` with `e = 1`
/// for sine and `e = 0` for cosine; `err` bounds the truncation and the final
/// conversions.
pub fn series_reference(kind: TrigKind, mu: f64, x: f64) -> Result<QuadResult> {
    check_mu(mu)?;
    if !(0.0..=SERIES_MAX_X * (1.0 + 1e-15)).contains(&x) {
        return domain(format!("series oracle needs 0 <= x <= 4π, got {x}"));
    }
    if x == 0.0 {
        return Ok(QuadResult::exact(0.0));
    }
    let xr = rat_from_f64(x)?;
    let mur = rat_from_f64(mu)?;
    let x2 = &xr * &xr;
    let e: i64 = match kind {
        TrigKind::Sin => 1,
        TrigKind::Cos => 0,
    };
    let cutoff = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 32));
    // power = (-1)^j x^{2j+e} / (2j+e)!
    let mut power = if e == 1 { xr.clone() } else { Rational::one() };
    let mut sum = Rational::zero();
    let mut k = e;
    let remainder = loop {
        let term = &power / (int(k) + &mur);
        sum += &term;
        power = -&power * &x2 / int((k + 1) * (k + 2));
        k += 2;
        let next = (&power / (int(k) + &mur)).abs();
        // Past k > x the magnitudes decrease, so the alternating tail is
        // bounded by its first term.
        if to_f64(&int(k)) > x + 1.0 && next < cutoff {
            break next;
        }
    };
    let xm = x.powf(mu);
    let s = to_f64(&sum);
    let value = xm * s;
    let err = 6.0 * f64::EPSILON * value.abs() + xm * to_f64(&remainder) * (1.0 + 1e-15);
    Ok(QuadResult { value, err, converged: true })
}

/// `𝔎(b, x) = (1/sin b) ∫₀ˣ cos(t + ρb - (ρ - 1/2)π) t^{μ-1} dt`.
pub fn frak_k(b: f64, x: f64, rho: f64, mu: f64, tol: f64) -> Result<QuadResult> {
    if !(b > 0.0 && b <= PI / 2.0 + 1e-15) {
        return domain(format!("b = {b} outside (0, π/2]"));
    }
    let eta = rho * b - (rho - 0.5) * PI;
    let s = b.sin();
    Ok(fractional_osc_integral(TrigKind::Cos, eta, mu, x, tol * s)?.scale(1.0 / s))
}

/// `(1/sin(π/5)) ∫₀^{8π/5} cos(t - π/10) t^{μ-1} dt`.
pub fn chi_reference_integral(mu: f64, tol: f64) -> Result<QuadResult> {
    let s = (PI / 5.0).sin();
    let i = fractional_osc_integral(TrigKind::Cos, -PI / 10.0, mu, 8.0 * PI / 5.0, tol * s)?;
    Ok(i.scale(1.0 / s))
}

/// Minimum of `F(x) = ∫₀ˣ g(t + η) t^{μ-1} dt` over `x ∈ [lo, hi]`.
///
/// `F' = g(x + η) x^{μ-1}`, so interior extrema sit at the zeros of
/// `g(x + η)`; those and the endpoints are the only candidates.
pub fn minimize_over_upper_limit(
    kind: TrigKind,
    eta: f64,
    mu: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, QuadResult)> {
    if !(0.0 <= lo && lo <= hi && hi.is_finite()) {
        return domain(format!("bad range [{lo}, {hi}]"));
    }
    let offset = match kind {
        TrigKind::Sin => 0.0,
        TrigKind::Cos => PI / 2.0,
    };
    let mut points = vec![lo];
    let first = ((lo + eta - offset) / PI).ceil() as i64;
    let mut j = first;
    loop {
        let z = offset + j as f64 * PI - eta;
        if z >= hi {
            break;
        }
        if z > lo {
            points.push(z);
        }
        j += 1;
    }
    points.push(hi);
    let mut acc = fractional_osc_integral(kind, eta, mu, lo, tol)?;
    let mut best = (lo, acc);
    let body = |t: f64| kind.apply(t + eta) * t.powf(mu - 1.0);
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b > a {
            acc = acc + adaptive(&body, a, b, tol);
        }
        if acc.value < best.1.value {
            best = (b, acc);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-13;

    #[test]
    fn zero_length_is_exact() {
        let r = fractional_osc_integral(TrigKind::Sin, 0.3, 0.5, 0.0, TOL).unwrap();
        assert_eq!(r, QuadResult::exact(0.0));
    }

    #[test]
    fn small_x_leading_term() {
        let x = 1e-4;
        let s = s_integral(0.5, x, 1e-20).unwrap();
        // S(x) ~ x^{1+μ}/(1+μ); C(x)/x^μ -> 1/μ.
        let c = c_integral(0.5, x, 1e-16).unwrap();
        assert!((c.value / x.powf(0.5) * 0.5 - 1.0).abs() < 1e-6);
        assert!((s.value / x.powf(1.5) * 1.5 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn mu_one_is_elementary() {
        let r = s_integral(1.0, PI, TOL).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let o = series_reference(TrigKind::Sin, 1.0, PI).unwrap();
        assert!((o.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn series_matches_quadrature_at_two_pi() {
        let mu = 0.4966913651;
        let q = s_integral(mu, 2.0 * PI, TOL).unwrap();
        let o = series_reference(TrigKind::Sin, mu, 2.0 * PI).unwrap();
        assert!((q.value - o.value).abs() < 1e-12);
        assert!((q.value - o.value).abs() <= q.err + o.err);
        assert!(q.converged);
    }

    #[test]
    fn series_rejects_large_x() {
        assert!(series_reference(TrigKind::Cos, 0.5, 13.0).is_err());
    }

    #[test]
    fn chi_at_mu_one() {
        let r = chi_reference_integral(1.0, TOL).unwrap();
        let s = (PI / 5.0).sin();
        let exact = ((8.0 * PI / 5.0 - PI / 10.0).sin() + (PI / 10.0).sin()) / s;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn minimum_over_limit_is_a_sampled_minimum() {
        let mu = 0.8468555683;
        let (x, m) = minimize_over_upper_limit(TrigKind::Cos, -PI / 10.0, mu, PI, 6.0 * PI, TOL).unwrap();
        assert!((PI..=6.0 * PI).contains(&x));
        for i in 0..=100 {
            let y = PI + 5.0 * PI * i as f64 / 100.0;
            let v = fractional_osc_integral(TrigKind::Cos, -PI / 10.0, mu, y, TOL).unwrap();
            assert!(m.value <= v.value + 1e-12);
        }
    }
}

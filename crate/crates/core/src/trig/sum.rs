use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, to_f64, Enclosure, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Sin,
    Cos,
}

impl TrigKind {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            TrigKind::Sin => x.sin(),
            TrigKind::Cos => x.cos(),
        }
    }
}

/// One term `coeff * g(freq * θ + phase * π)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub coeff: Enclosure,
    #[serde(with = "crate::exact::rational_serde")]
    pub freq: Rational,
    /// Phase as a rational multiple of π, reduced into `[0, 2)`.
    #[serde(with = "crate::exact::rational_serde")]
    pub phase: Rational,
    pub kind: TrigKind,
}

impl TrigTerm {
    pub fn new(coeff: Enclosure, freq: Rational, phase: Rational, kind: TrigKind) -> Self {
        assert!(!freq.is_negative(), "trigonometric frequencies are non-negative");
        Self { coeff, freq, phase: reduce_phase(&phase), kind }
    }
}

/// `phase mod 2` as an exact rational in `[0, 2)`.
pub fn reduce_phase(phase: &Rational) -> Rational {
    let two = int(2);
    let q = (phase / &two).floor();
    phase - q * two
}

#[derive(Clone, Debug)]
struct Compiled {
    mid: f64,
    rad: f64,
    freq: f64,
    freq_err: f64,
    phase: f64,
    kind: TrigKind,
}

/// A finite trigonometric sum in one angle variable.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "SumRepr", into = "SumRepr")]
pub struct TrigSum {
    label: String,
    terms: Vec<TrigTerm>,
    compiled: Vec<Compiled>,
}

#[derive(Serialize, Deserialize)]
struct SumRepr {
    label: String,
    terms: Vec<TrigTerm>,
}

impl From<SumRepr> for TrigSum {
    fn from(r: SumRepr) -> Self {
        TrigSum::new(r.label, r.terms)
    }
}

impl From<TrigSum> for SumRepr {
    fn from(s: TrigSum) -> Self {
        SumRepr { label: s.label, terms: s.terms }
    }
}

impl PartialEq for TrigSum {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.terms == other.terms
    }
}

/// Value of a sum (or one of its derivatives) with a rigorous bound on the
/// distance to the exact value for every coefficient in its enclosure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub err: f64,
}

/// Value and first two derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Evaluation,
    pub d1: Evaluation,
    pub d2: Evaluation,
}

const EPS: f64 = f64::EPSILON;

impl TrigSum {
    pub fn new(label: impl Into<String>, terms: Vec<TrigTerm>) -> Self {
        let compiled = terms
            .iter()
            .map(|t| {
                let (mid, rad) = t.coeff.mid_rad_f64();
                let freq = to_f64(&t.freq);
                Compiled {
                    mid,
                    rad,
                    freq,
                    freq_err: 2.0 * EPS * freq.abs(),
                    phase: to_f64(&t.phase) * PI,
                    kind: t.kind,
                }
            })
            .collect();
        Self { label: label.into(), terms, compiled }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Plain float value, no error bookkeeping.
    pub fn value(&self, theta: f64) -> f64 {
        self.compiled
            .iter()
            .map(|c| c.mid * c.kind.apply(c.freq * theta + c.phase))
            .sum()
    }

    pub fn eval(&self, theta: f64) -> Evaluation {
        self.jet(theta).value
    }

    /// Value, first and second derivative with error bounds.
    pub fn jet(&self, theta: f64) -> Jet {
        let n = self.compiled.len() as f64;
        let mut acc = [0.0f64; 3];
        let mut mag = [0.0f64; 3];
        let mut err = [0.0f64; 3];
        for c in &self.compiled {
            let arg = c.freq * theta + c.phase;
            // Error in the argument: freq rounding, product, π rounding, sum.
            let arg_err = c.freq_err * theta.abs()
                + 3.0 * EPS * (c.freq * theta).abs()
                + 4.0 * EPS * c.phase.abs()
                + 2.0 * EPS * arg.abs();
            let (s, co) = arg.sin_cos();
            let (g0, g1, g2) = match c.kind {
                TrigKind::Sin => (s, co, -s),
                TrigKind::Cos => (co, -s, -co),
            };
            let a = c.freq;
            let terms = [c.mid * g0, c.mid * a * g1, c.mid * a * a * g2];
            let scales = [1.0, a + c.freq_err, (a + c.freq_err).powi(2)];
            for i in 0..3 {
                acc[i] += terms[i];
                mag[i] += terms[i].abs();
                // |g(arg) - g(exact)| <= arg_err + libm ulp; coefficient radius
                // covers the enclosure.
                err[i] += scales[i] * (c.rad + c.mid.abs() * (arg_err + 2.0 * EPS))
                    + c.mid.abs() * (scales[i] - a.powi(i as i32)).abs();
            }
        }
        let finish = |i: usize| Evaluation {
            value: acc[i],
            err: err[i] + (n + 2.0) * EPS * mag[i] + f64::MIN_POSITIVE,
        };
        Jet { value: finish(0), d1: finish(1), d2: finish(2) }
    }

    /// `sum |c_k| * freq_k^order`, a bound on the `order`-th derivative.
    pub fn derivative_bound(&self, order: i32) -> f64 {
        let b: f64 = self
            .compiled
            .iter()
            .map(|c| (c.mid.abs() + c.rad) * (c.freq + c.freq_err).powi(order))
            .sum();
        b * (1.0 + 4.0 * EPS * (self.compiled.len() as f64 + 1.0))
    }

    /// Lipschitz constant `sum |c_k| freq_k`.
    pub fn lipschitz(&self) -> f64 {
        self.derivative_bound(1)
    }

    /// Bound on the error of [`TrigSum::eval`] at `theta` due only to
    /// coefficient enclosure widths.
    pub fn enclosure_width_effect(&self) -> f64 {
        self.compiled.iter().map(|c| c.rad).sum()
    }

    /// True when every term is `c * sin(freq θ)` with `c > 0`, the shape
    /// handled by the termwise sine bound near `θ = 0`.
    pub(crate) fn is_positive_sine_series(&self) -> bool {
        self.terms.iter().all(|t| {
            t.kind == TrigKind::Sin && t.phase.is_zero() && t.coeff.lo().is_positive()
        })
    }

    /// Sum over terms of `freq^k * |c|` using lower (`upper = false`) or
    /// upper coefficient endpoints.
    pub(crate) fn weighted_coeff_sum(&self, power: i32, upper: bool) -> f64 {
        self.compiled
            .iter()
            .map(|c| {
                let coeff = if upper { c.mid + c.rad } else { c.mid - c.rad };
                let f = if upper { c.freq + c.freq_err } else { c.freq - c.freq_err };
                coeff * f.powi(power)
            })
            .sum()
    }

    /// Rewrites the sum in a new variable `s` with `θ = scale * s + shift * π`.
    /// Terms whose phase becomes a multiple of `π/2` are folded into a plain
    /// `±sin` or `±cos` with zero phase.
    pub fn substitute(&self, scale: &Rational, shift: &Rational) -> TrigSum {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut freq = &t.freq * scale;
                let mut phase = &t.phase + &t.freq * shift;
                let mut coeff = t.coeff.clone();
                if freq.is_negative() {
                    freq = -freq;
                    phase = -phase;
                    if t.kind == TrigKind::Sin {
                        coeff = -&coeff;
                    }
                }
                canonical(TrigTerm::new(coeff, freq, phase, t.kind))
            })
            .collect();
        TrigSum::new(self.label.clone(), terms)
    }

    /// Reflects the angle: returns `θ ↦ self(π - θ)` as a new sum.
    pub fn reflected(&self) -> TrigSum {
        // g(a(π - θ) + bπ) = g(-aθ + (a + b)π); fold the sign of θ into g.
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let phase = &t.freq + &t.phase;
                match t.kind {
                    TrigKind::Cos => TrigTerm::new(t.coeff.clone(), t.freq.clone(), -phase, TrigKind::Cos),
                    TrigKind::Sin => TrigTerm::new(-&t.coeff, t.freq.clone(), -phase, TrigKind::Sin),
                }
            })
            .collect();
        TrigSum::new(format!("{}(pi - .)", self.label), terms)
    }
}

/// Folds a phase that is a multiple of `π/2` into the kind and sign.
fn canonical(t: TrigTerm) -> TrigTerm {
    let twice = &t.phase * int(2);
    let Some(j) = as_integer(&twice) else { return t };
    let (kind, negate) = match (t.kind, j) {
        (k, 0) => (k, false),
        (TrigKind::Cos, 1) => (TrigKind::Sin, true),
        (TrigKind::Cos, 2) => (TrigKind::Cos, true),
        (TrigKind::Cos, _) => (TrigKind::Sin, false),
        (TrigKind::Sin, 1) => (TrigKind::Cos, false),
        (TrigKind::Sin, 2) => (TrigKind::Sin, true),
        (TrigKind::Sin, _) => (TrigKind::Cos, true),
    };
    let coeff = if negate { -&t.coeff } else { t.coeff };
    TrigTerm::new(coeff, t.freq, int(0), kind)
}

/// The value of an integral rational, if it fits in `i64`.
pub(crate) fn as_integer(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn single(kind: TrigKind, freq: Rational, phase: Rational) -> TrigSum {
        TrigSum::new("t", vec![TrigTerm::new(Enclosure::point(int(1)), freq, phase, kind)])
    }

    #[test]
    fn phase_is_reduced_mod_two() {
        assert_eq!(reduce_phase(&rat(-1, 6)), rat(11, 6));
        assert_eq!(reduce_phase(&rat(5, 2)), rat(1, 2));
        assert_eq!(reduce_phase(&int(2)), int(0));
    }

    #[test]
    fn evaluation_matches_direct_formula() {
        let s = single(TrigKind::Cos, rat(1, 3), rat(-1, 6));
        let phi = 0.7;
        let ev = s.eval(phi);
        assert!((ev.value - (phi / 3.0 - PI / 6.0).cos()).abs() <= ev.err.max(1e-16));
        assert!(ev.err < 1e-14);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let s = TrigSum::new(
            "mix",
            vec![
                TrigTerm::new(Enclosure::point(rat(3, 4)), rat(7, 3), rat(1, 5), TrigKind::Sin),
                TrigTerm::new(Enclosure::point(rat(-2, 1)), rat(5, 1), rat(0, 1), TrigKind::Cos),
            ],
        );
        let x = 0.4;
        let h = 1e-5;
        let jet = s.jet(x);
        let fd1 = (s.value(x + h) - s.value(x - h)) / (2.0 * h);
        let fd2 = (s.value(x + h) - 2.0 * s.value(x) + s.value(x - h)) / (h * h);
        assert!((jet.d1.value - fd1).abs() < 1e-6);
        assert!((jet.d2.value - fd2).abs() < 1e-3);
    }

    #[test]
    fn coefficient_width_enters_error() {
        let wide = TrigSum::new(
            "w",
            vec![TrigTerm::new(
                Enclosure::new(rat(1, 1), rat(11, 10)).unwrap(),
                int(1),
                int(0),
                TrigKind::Cos,
            )],
        );
        assert!(wide.eval(0.0).err >= 0.05);
    }

    #[test]
    fn reflection_matches_pointwise() {
        let s = single(TrigKind::Sin, rat(7, 3), rat(1, 3));
        let r = s.reflected();
        for i in 1..20 {
            let x = 0.15 * i as f64;
            assert!((r.value(x) - s.value(PI - x)).abs() < 1e-12);
        }
    }

    #[test]
    fn lipschitz_is_weighted_coefficient_sum() {
        let s = TrigSum::new(
            "l",
            vec![
                TrigTerm::new(Enclosure::point(rat(1, 2)), int(2), int(0), TrigKind::Cos),
                TrigTerm::new(Enclosure::point(rat(-1, 4)), int(4), int(0), TrigKind::Sin),
            ],
        );
        assert!((s.lipschitz() - 2.0).abs() < 1e-12);
    }
}

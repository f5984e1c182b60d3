use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::Status;
use crate::trig::TrigSum;

/// Record of a positivity claim for a trigonometric sum on `[a, b]`.
///
/// The interval is covered by cells `[m - δ, m + δ]`; on each cell the
/// second-order Taylor expansion at `m` with a third-derivative remainder
/// gives a lower bound, and cells whose bound is not above `slack` are split.
/// `margin` is the smallest cell bound, so `status == Certified` implies
/// the sum exceeds `margin > slack >= 0` on the whole interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridCertificate {
    pub label: String,
    pub interval: (f64, f64),
    pub slack: f64,
    /// Smallest cell width used.
    pub step: f64,
    /// `Σ |c_k| freq_k`.
    pub lipschitz: f64,
    /// Smallest value seen at a cell midpoint.
    pub min_sampled: f64,
    pub margin: f64,
    pub status: Status,
    pub witness: Option<f64>,
    pub cells: usize,
    /// Right end of `(0, θ₀]` when that piece was covered by the termwise
    /// sine bound instead of cells.
    pub near_zero: Option<f64>,
}

impl GridCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }
}

const CHUNKS: usize = 64;
const MAX_CELLS_PER_CHUNK: usize = 2_000_000;

#[derive(Clone, Copy)]
struct ChunkResult {
    margin: f64,
    min_sampled: f64,
    step: f64,
    cells: usize,
    witness: Option<f64>,
    exhausted: bool,
}

fn chunk(sum: &TrigSum, a: f64, b: f64, slack: f64, m3: f64) -> ChunkResult {
    let mut out = ChunkResult {
        margin: f64::INFINITY,
        min_sampled: f64::INFINITY,
        step: b - a,
        cells: 0,
        witness: None,
        exhausted: false,
    };
    let mut stack = vec![(a, b)];
    while let Some((l, r)) = stack.pop() {
        out.cells += 1;
        let m = 0.5 * (l + r);
        // δ is rounded up so the cell [m - δ, m + δ] covers [l, r].
        let delta = (0.5 * (r - l)) * (1.0 + 4.0 * f64::EPSILON) + f64::EPSILON * m.abs();
        let jet = sum.jet(m);
        out.min_sampled = out.min_sampled.min(jet.value.value);
        if jet.value.value + jet.value.err <= 0.0 {
            out.witness = Some(m);
            out.margin = out.margin.min(jet.value.value);
            return out;
        }
        let d1 = jet.d1.value.abs() + jet.d1.err;
        let d2 = jet.d2.value.abs() + jet.d2.err;
        let lower = jet.value.value
            - jet.value.err
            - d1 * delta
            - d2 * delta * delta / 2.0
            - m3 * delta * delta * delta / 6.0;
        // Rounding in the bound itself.
        let lower = lower - 8.0 * f64::EPSILON * (jet.value.value.abs() + d1 * delta + d2 * delta * delta);
        if lower > slack {
            out.margin = out.margin.min(lower);
            out.step = out.step.min(r - l);
            continue;
        }
        if out.cells >= MAX_CELLS_PER_CHUNK || r - l < 1e-12 * m.abs().max(1.0) {
            out.exhausted = true;
            out.margin = out.margin.min(lower);
            out.step = out.step.min(r - l);
            continue;
        }
        stack.push((m, r));
        stack.push((l, m));
    }
    out
}

/// Proves `sum > slack` on `[a, b]` or finds a point where `sum <= 0`.
///
/// When `a == 0` and the sum is a sine series with positive coefficients
/// (so it vanishes at 0), the piece `(0, θ₀]` is handled by
/// `sin x >= x - x³/6`: the sum is at least `θ (S₁ - θ² S₃ / 6)` where
/// `S_j = Σ c_k freq_k^j`. The certificate then claims positivity on
/// `(0, b]` and `margin` refers to `[θ₀, b]` (it is 0 when `θ₀ >= b`).
pub fn certify_positive_trig(sum: &TrigSum, a: f64, b: f64, slack: f64) -> Result<GridCertificate> {
    if !(a <= b) || !a.is_finite() || !b.is_finite() {
        return domain(format!("bad interval [{a}, {b}]"));
    }
    if !(slack >= 0.0) {
        return domain(format!("slack {slack} must be non-negative"));
    }
    let mut start = a;
    let mut near_zero = None;
    if a == 0.0 && sum.is_positive_sine_series() {
        let s1 = sum.weighted_coeff_sum(1, false);
        let s3 = sum.weighted_coeff_sum(3, true);
        // θ₀ with θ₀² S₃/6 = S₁/2 keeps the bracket at least θ S₁/2 > 0.
        let theta0 = (3.0 * s1 / s3).sqrt() * (1.0 - 1e-12);
        if s1 > 0.0 && theta0 > 0.0 {
            start = theta0.min(b);
            near_zero = Some(start);
        }
    }
    let lipschitz = sum.lipschitz();
    let m3 = sum.derivative_bound(3);
    let mut results: Vec<ChunkResult> = Vec::new();
    if start < b || near_zero.is_none() {
        let width = (b - start) / CHUNKS as f64;
        results = (0..CHUNKS)
            .into_par_iter()
            .map(|i| {
                let l = start + width * i as f64;
                let r = if i + 1 == CHUNKS { b } else { start + width * (i + 1) as f64 };
                chunk(sum, l, r, slack, m3)
            })
            .collect();
    }
    if results.is_empty() {
        // The sine bound covered all of (0, b]; its infimum is 0 at θ -> 0.
        return Ok(GridCertificate {
            label: sum.label().to_string(),
            interval: (a, b),
            slack,
            step: b - a,
            lipschitz,
            min_sampled: sum.value(b),
            margin: 0.0,
            status: Status::Certified,
            witness: None,
            cells: 0,
            near_zero,
        });
    }
    let margin = results.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
    let min_sampled = results.iter().map(|c| c.min_sampled).fold(f64::INFINITY, f64::min);
    let step = results.iter().map(|c| c.step).fold(f64::INFINITY, f64::min);
    let cells = results.iter().map(|c| c.cells).sum();
    let witness = results.iter().find_map(|c| c.witness);
    let exhausted = results.iter().any(|c| c.exhausted);
    let status = if witness.is_some() {
        Status::Refuted
    } else if exhausted || !(margin > slack) {
        Status::Inconclusive
    } else {
        Status::Certified
    };
    Ok(GridCertificate {
        label: sum.label().to_string(),
        interval: (a, b),
        slack,
        step,
        lipschitz,
        min_sampled,
        margin,
        status,
        witness,
        cells,
        near_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Enclosure};
    use crate::trig::{build_omega, build_u_n, build_varsigma};
    use std::f64::consts::PI;

    #[test]
    fn u0_certified_away_from_zero() {
        let s = build_u_n(0, &Enclosure::point(rat(1, 2)));
        let c = certify_positive_trig(&s, 0.1, PI / 2.0, 0.0).unwrap();
        assert!(c.is_certified());
        assert!(c.margin > 0.0);
    }

    #[test]
    fn sign_change_is_refuted() {
        let s = build_u_n(0, &Enclosure::point(rat(1, 2)));
        // cos(φ/3 - π/6) vanishes at φ = 2π.
        let c = certify_positive_trig(&s, 0.1, 3.0 * PI, 0.0).unwrap();
        assert_eq!(c.status, Status::Refuted);
        let w = c.witness.unwrap();
        assert!(s.value(w) <= 1e-12);
    }

    #[test]
    fn omega_near_zero_uses_sine_bound() {
        let s = build_omega(2);
        let c = certify_positive_trig(&s, 0.0, PI, 0.0).unwrap();
        assert!(c.is_certified(), "{c:?}");
        assert!(c.near_zero.unwrap() > 0.0);
    }

    #[test]
    fn certified_sums_are_positive_on_samples() {
        let s = build_varsigma(6, &rat(1, 3), &Enclosure::point(rat(1, 2)));
        let c = certify_positive_trig(&s, 1e-3, PI - 1e-3, 0.0).unwrap();
        assert!(c.is_certified());
        for i in 0..=10_000 {
            let th = 1e-3 + (PI - 2e-3) * i as f64 / 10_000.0;
            assert!(s.value(th) > 0.0);
        }
    }

    #[test]
    fn slack_too_large_is_not_certified() {
        let s = build_u_n(0, &Enclosure::point(rat(1, 2)));
        let c = certify_positive_trig(&s, 0.1, PI / 2.0, 10.0).unwrap();
        assert_eq!(c.status, Status::Inconclusive);
    }
}

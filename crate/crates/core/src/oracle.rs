//! Independent checks of the Sturm root counter and the quadrature.

use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{int, rat, sturm_chain, Polynomial, Rational};
use crate::quad::{fractional_osc_integral, series_reference, QuadResult};
use crate::trig::TrigKind;

/// Grid used by the brute-force root counter: `x_j = -RANGE + j·STEP`.
pub const GRID_STEP: i64 = 10_000;
pub const GRID_RANGE: i64 = 3;

/// Random polynomial of degree `1..=max_degree` with coefficients `p/q`,
/// `|p/q| <= 10`, reduced to its squarefree part.
pub fn random_polynomial(rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    loop {
        let degree = rng.gen_range(1..=max_degree);
        let coeffs: Vec<Rational> = (0..=degree)
            .map(|_| {
                let q = rng.gen_range(1..=12i64);
                rat(rng.gen_range(-10 * q..=10 * q), q)
            })
            .collect();
        let p = Polynomial::new(coeffs);
        if p.degree().unwrap_or(0) >= 1 {
            return p.squarefree_part();
        }
    }
}

/// Exact sign of `p` at the grid point `j`, using `f64` when its error bound
/// allows.
fn grid_sign(p: &Polynomial, pf: &[f64], j: i64) -> i8 {
    let x = -(GRID_RANGE as f64) + j as f64 / GRID_STEP as f64;
    let (mut v, mut mag) = (0.0f64, 0.0f64);
    for c in pf.iter().rev() {
        v = v * x + c;
        mag = mag * x.abs() + c.abs();
    }
    let bound = 4.0 * (pf.len() as f64 + 1.0) * f64::EPSILON * mag * (1.0 + 1e-6) + 1e-300;
    if v > bound {
        1
    } else if v < -bound {
        -1
    } else {
        let xr = int(-GRID_RANGE) + rat(j, GRID_STEP);
        let e = p.eval(&xr);
        if e.is_zero() {
            0
        } else if e.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Root positions on the grid, in half-steps: `2j` for a root at `x_j`,
/// `2j + 1` for a sign change inside `(x_j, x_{j+1})`.
pub fn grid_roots(p: &Polynomial) -> Vec<i64> {
    let pf: Vec<f64> = p.coeffs().iter().map(crate::exact::to_f64).collect();
    let n = 2 * GRID_RANGE * GRID_STEP;
    let signs: Vec<i8> = (0..=n).map(|j| grid_sign(p, &pf, j)).collect();
    let mut roots = Vec::new();
    for j in 0..=n as usize {
        if signs[j] == 0 {
            roots.push(2 * j as i64);
        } else if j < n as usize && signs[j] * signs[j + 1] < 0 {
            roots.push(2 * j as i64 + 1);
        }
    }
    roots
}

/// Roots of the grid scan inside `(x_a, x_b]`.
pub fn brute_force_count(roots: &[i64], a: i64, b: i64) -> usize {
    roots.iter().filter(|&&r| r > 2 * a && r <= 2 * b).count()
}

fn grid_point(j: i64) -> Rational {
    int(-GRID_RANGE) + rat(j, GRID_STEP)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SturmDisagreement {
    pub polynomial: Vec<String>,
    pub interval: (String, String),
    pub sturm: usize,
    pub brute_force: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SturmOracleReport {
    pub polynomials: usize,
    pub intervals: usize,
    pub comparisons: usize,
    pub roots_seen: usize,
    pub disagreements: Vec<SturmDisagreement>,
}

/// Compares Sturm counts with the grid scan on random polynomials and
/// random grid-aligned intervals inside `[-3, 3]`.
pub fn sturm_oracle(polys: usize, intervals: usize, seed: u64) -> Result<SturmOracleReport> {
    let results: Vec<Result<(usize, usize, Vec<SturmDisagreement>)>> = (0..polys)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let p = random_polynomial(&mut rng, 8);
            let chain = sturm_chain(&p)?;
            let roots = grid_roots(&p);
            let n = 2 * GRID_RANGE * GRID_STEP;
            let mut bad = Vec::new();
            let mut seen = 0;
            for _ in 0..intervals {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(a + 1..=n);
                let s = chain.count_roots_in(&grid_point(a), &grid_point(b))?;
                let g = brute_force_count(&roots, a, b);
                seen += g;
                if s != g {
                    bad.push(SturmDisagreement {
                        polynomial: p.coeffs().iter().map(ToString::to_string).collect(),
                        interval: (grid_point(a).to_string(), grid_point(b).to_string()),
                        sturm: s,
                        brute_force: g,
                    });
                }
            }
            Ok((intervals, seen, bad))
        })
        .collect();
    let mut report = SturmOracleReport {
        polynomials: polys,
        intervals,
        comparisons: 0,
        roots_seen: 0,
        disagreements: Vec::new(),
    };
    for r in results {
        let (c, seen, bad) = r?;
        report.comparisons += c;
        report.roots_seen += seen;
        report.disagreements.extend(bad);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadOracleCase {
    pub kind: TrigKind,
    pub eta: f64,
    pub mu: f64,
    pub x: f64,
    pub quadrature: QuadResult,
    pub series: QuadResult,
    /// `|quadrature - series| / (quadrature.err + series.err)`.
    pub ratio: f64,
}

impl QuadOracleCase {
    pub fn agrees(&self) -> bool {
        self.ratio <= 1.0
    }
}

/// `∫₀ˣ g(t + η) t^{μ-1} dt` from the sine and cosine series.
pub fn series_with_phase(kind: TrigKind, eta: f64, mu: f64, x: f64) -> Result<QuadResult> {
    let s = series_reference(TrigKind::Sin, mu, x)?;
    let c = series_reference(TrigKind::Cos, mu, x)?;
    let (se, ce) = eta.sin_cos();
    // sin(t + η) = cos η sin t + sin η cos t, cos(t + η) = cos η cos t - sin η sin t.
    let r = match kind {
        TrigKind::Sin => s.scale(ce) + c.scale(se),
        TrigKind::Cos => c.scale(ce) - s.scale(se),
    };
    let slop = 2.0 * f64::EPSILON * (s.value.abs() + c.value.abs());
    Ok(QuadResult { value: r.value, err: r.err + slop, converged: true })
}

pub const ORACLE_ETAS: [f64; 4] = [0.0, -PI / 6.0, PI / 3.0, -PI / 10.0];
pub const ORACLE_MUS: [f64; 4] = [0.2, 0.5, 0.8468555683, 1.0];
pub const ORACLE_XS: [f64; 5] = [0.5, PI, 8.0 * PI / 5.0, 2.0 * PI, 4.0 * PI];

/// Quadrature against the series over kinds × phases × exponents × limits.
pub fn quad_oracle(tol: f64) -> Result<Vec<QuadOracleCase>> {
    let mut grid = Vec::new();
    for kind in [TrigKind::Sin, TrigKind::Cos] {
        for eta in ORACLE_ETAS {
            for mu in ORACLE_MUS {
                for x in ORACLE_XS {
                    grid.push((kind, eta, mu, x));
                }
            }
        }
    }
    grid.into_par_iter()
        .map(|(kind, eta, mu, x)| {
            let quadrature = fractional_osc_integral(kind, eta, mu, x, tol)?;
            let series = series_with_phase(kind, eta, mu, x)?;
            let ratio = (quadrature.value - series.value).abs() / (quadrature.err + series.err);
            Ok(QuadOracleCase { kind, eta, mu, x, quadrature, series, ratio })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_scan_finds_known_roots() {
        // Roots at the grid point 1/2, at -1, and strictly between grid points at 2.00005.
        let p = Polynomial::new(vec![rat(-1, 2), int(1)]);
        let q = Polynomial::new(vec![int(1), int(1)]);
        let r = Polynomial::new(vec![rat(-200005, 100000), int(1)]);
        let roots = grid_roots(&(&(&p * &q) * &r));
        assert_eq!(roots.len(), 3);
        assert_eq!(brute_force_count(&roots, 0, 2 * GRID_RANGE * GRID_STEP), 3);
        assert_eq!(roots[1], 2 * (GRID_RANGE * GRID_STEP + GRID_STEP / 2));
    }

    #[test]
    fn small_sturm_oracle_run_agrees() {
        let r = sturm_oracle(10, 20, 7).unwrap();
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert_eq!(r.comparisons, 200);
    }

    #[test]
    fn phase_series_matches_plain_series() {
        let a = series_with_phase(TrigKind::Sin, 0.0, 0.5, 2.0).unwrap();
        let b = series_reference(TrigKind::Sin, 0.5, 2.0).unwrap();
        assert!((a.value - b.value).abs() < 1e-15);
    }
}

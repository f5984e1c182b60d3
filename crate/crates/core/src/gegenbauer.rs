//! Gegenbauer polynomials `C_k^λ`, the coefficients of `(1 - 2xz + z²)^{-λ}`,
//! and disk scans of their generating-function partial sums.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{int, Rational};

/// `C_k^λ(x)` by `k C_k = 2x(k + λ - 1) C_{k-1} - (k + 2λ - 2) C_{k-2}`.
pub fn gegenbauer_c(k: usize, lambda: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * lambda * x);
    if k == 0 {
        return prev;
    }
    for j in 2..=k {
        let j = j as f64;
        let next = (2.0 * x * (j + lambda - 1.0) * cur - (j + 2.0 * lambda - 2.0) * prev) / j;
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_0^λ(x), ..., C_n^λ(x)`.
pub fn gegenbauer_values(n: usize, lambda: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(2.0 * lambda * x);
    }
    for j in 2..=n {
        let jf = j as f64;
        let next = (2.0 * x * (jf + lambda - 1.0) * out[j - 1] - (jf + 2.0 * lambda - 2.0) * out[j - 2]) / jf;
        out.push(next);
    }
    out
}

/// The same recurrence in exact arithmetic.
pub fn gegenbauer_c_exact(k: usize, lambda: &Rational, x: &Rational) -> Rational {
    let two = int(2);
    let (mut prev, mut cur) = (int(1), &two * lambda * x);
    if k == 0 {
        return prev;
    }
    for j in 2..=k {
        let jr = int(j as i64);
        let next = (&two * x * (&jr + lambda - int(1)) * &cur - (&jr + &two * lambda - &two) * &prev) / &jr;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k^{(α,β)}(x)` by the Jacobi three-term recurrence.
pub fn jacobi_p(k: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    for j in 2..=k {
        let j = j as f64;
        let s = 2.0 * j + alpha + beta;
        let a1 = 2.0 * j * (j + alpha + beta) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * s;
        let next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|j| a + j as f64).product()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// `(c)_k / k! · P_k^{(a,a)}(x) / P_k^{(a,a)}(1)`.
fn normalized_jacobi(k: usize, c: f64, a: f64, x: f64) -> f64 {
    pochhammer(c, k) / factorial(k) * jacobi_p(k, a, a, x) / jacobi_p(k, a, a, 1.0)
}

/// `C_k^λ(x)` from its recurrence next to two Jacobi-based expressions:
/// `standard` uses `(2λ)_k/k!` and `P^{(λ-1/2, λ-1/2)}`, `printed` uses
/// `(2λ+1)_k/k!` and `P^{(λ, λ)}`. Only `standard` equals `C_k^λ`; `printed`
/// equals `C_k^{λ+1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiComparison {
    pub k: usize,
    pub lambda: f64,
    pub x: f64,
    pub recurrence: f64,
    pub standard: f64,
    pub printed: f64,
}

impl JacobiComparison {
    pub fn standard_error(&self) -> f64 {
        (self.recurrence - self.standard).abs()
    }

    pub fn printed_error(&self) -> f64 {
        (self.recurrence - self.printed).abs()
    }
}

pub fn jacobi_identity_check(k: usize, lambda: f64, x: f64) -> JacobiComparison {
    JacobiComparison {
        k,
        lambda,
        x,
        recurrence: gegenbauer_c(k, lambda, x),
        standard: normalized_jacobi(k, 2.0 * lambda, lambda - 0.5, x),
        printed: normalized_jacobi(k, 2.0 * lambda + 1.0, lambda, x),
    }
}

/// `Σ_{k≤n} C_k^λ(x) z^k`.
pub fn gegenbauer_partial_sum(n: usize, lambda: f64, x: f64, z: Complex64) -> Complex64 {
    sum_with(&gegenbauer_values(n, lambda, x), z)
}

fn sum_with(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// `(1 - 2xz + z²)^{-λ}` for `|x| <= 1`, `|z| < 1`, written as
/// `(1 - e^{iα}z)^{-λ} (1 - e^{-iα}z)^{-λ}` with `x = cos α` so that each
/// factor stays on the principal branch.
pub fn generating_function(lambda: f64, x: f64, z: Complex64) -> Complex64 {
    let alpha = x.clamp(-1.0, 1.0).acos();
    let one = Complex64::new(1.0, 0.0);
    let e = Complex64::from_polar(1.0, alpha);
    (one - e * z).powf(-lambda) * (one - e.conj() * z).powf(-lambda)
}

/// Points `r e^{iθ}` for every radius and angle.
pub fn disk_grid(radii: &[f64], angles: &[f64]) -> Vec<Complex64> {
    radii
        .iter()
        .flat_map(|&r| angles.iter().map(move |&t| Complex64::from_polar(r, t)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerSample {
    pub x: f64,
    pub r: f64,
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

impl GegenbauerSample {
    fn new(x: f64, z: Complex64, w: Complex64) -> Self {
        Self { x, r: z.norm(), theta: z.arg(), re: w.re, im: w.im }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn scan(n: usize, lambda: f64, x_grid: &[f64], z_grid: &[Complex64]) -> Vec<GegenbauerSample> {
    x_grid
        .par_iter()
        .flat_map_iter(|&x| {
            let coeffs = gegenbauer_values(n, lambda, x);
            z_grid.iter().map(move |&z| GegenbauerSample::new(x, z, sum_with(&coeffs, z)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgBoundReport {
    pub n: usize,
    pub lambda: f64,
    pub samples: usize,
    pub max_abs_arg: f64,
    pub argmax: Option<GegenbauerSample>,
    /// `π/3`.
    pub bound: f64,
    pub passed: bool,
}

/// Largest `|arg Σ_{k≤n} C_k^λ(x) z^k|` over the grids, compared with `π/3`.
pub fn arg_bound_check(n: usize, lambda: f64, x_grid: &[f64], z_grid: &[Complex64]) -> ArgBoundReport {
    let samples = scan(n, lambda, x_grid, z_grid);
    let argmax = samples
        .iter()
        .copied()
        .max_by(|a, b| a.value().arg().abs().total_cmp(&b.value().arg().abs()));
    let max_abs_arg = argmax.map_or(0.0, |s| s.value().arg().abs());
    ArgBoundReport {
        n,
        lambda,
        samples: samples.len(),
        max_abs_arg,
        argmax,
        bound: PI / 3.0,
        passed: max_abs_arg < PI / 3.0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonvanishingReport {
    pub n: usize,
    pub lambda: f64,
    /// Radius of the interior circle.
    pub interior_radius: f64,
    pub interior_min: f64,
    pub interior_argmin: Option<GegenbauerSample>,
    pub boundary_min: f64,
    pub boundary_argmin: Option<GegenbauerSample>,
}

impl NonvanishingReport {
    pub fn interior_nonvanishing(&self) -> bool {
        self.interior_min > 0.0
    }
}

pub const INTERIOR_RADIUS: f64 = 1.0 - 1e-3;

/// Smallest `|Σ_{k≤n} C_k^λ(x) z^k|` on `|z| = 1 - 10⁻³` and on `|z| = 1`
/// at the given angles.
pub fn nonvanishing_check(n: usize, lambda: f64, x_grid: &[f64], angles: &[f64]) -> NonvanishingReport {
    let min_of = |r: f64| {
        let s = scan(n, lambda, x_grid, &disk_grid(&[r], angles));
        s.into_iter().min_by(|a, b| a.value().norm().total_cmp(&b.value().norm()))
    };
    let interior = min_of(INTERIOR_RADIUS);
    let boundary = min_of(1.0);
    NonvanishingReport {
        n,
        lambda,
        interior_radius: INTERIOR_RADIUS,
        interior_min: interior.map_or(f64::MAX, |s| s.value().norm()),
        interior_argmin: interior,
        boundary_min: boundary.map_or(f64::MAX, |s| s.value().norm()),
        boundary_argmin: boundary,
    }
}

/// `m` points of `(-1, 1)`, equally spaced and avoiding the ends.
pub fn x_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| -1.0 + 2.0 * (j as f64 + 0.5) / m as f64).collect()
}

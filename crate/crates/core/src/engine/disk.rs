use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{rat_from_f64, Enclosure};
use crate::trig::build_u_n;

/// `Σ_{k≤n} d_k z^k` with `d_k = (μ)_k / k!`.
pub fn partial_sum(mu: f64, z: Complex64, n: usize) -> Complex64 {
    let mut d = 1.0;
    let mut zk = Complex64::new(1.0, 0.0);
    let mut acc = zk;
    for k in 0..n {
        d *= (mu + k as f64) / (k as f64 + 1.0);
        zk *= z;
        acc += zk * d;
    }
    acc
}

/// `Σ_{k≥0} d_k e^{2ikφ} = e^{iμ(π/2 - φ)} / (2 sin φ)^μ`, `0 < φ < π`.
pub fn closed_form_full_sum(mu: f64, phi: f64) -> Result<Complex64> {
    if !(phi > 0.0 && phi < PI) {
        return domain(format!("phi = {phi} outside (0, pi)"));
    }
    Ok(Complex64::from_polar((2.0 * phi.sin()).powf(-mu), mu * (PI / 2.0 - phi)))
}

/// `(1 - z)^p` on the principal branch.
pub fn one_minus_z_pow(z: Complex64, p: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - z).powf(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSample {
    pub r: f64,
    pub theta: f64,
    pub re: f64,
    pub im: f64,
    pub arg: f64,
}

impl DiskSample {
    fn new(r: f64, theta: f64, w: Complex64) -> Self {
        Self { r, theta, re: w.re, im: w.im, arg: w.arg() }
    }
}

/// `m` angles in `(-π, π)`, symmetric about 0.
pub fn angle_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| -PI + 2.0 * PI * (j as f64 + 0.5) / m as f64).collect()
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return domain(format!("radius {r} outside (0, 1)"));
    }
    Ok(())
}

fn sample(n: usize, mu: f64, power: f64, radii: &[f64], angles: &[f64]) -> Vec<DiskSample> {
    radii
        .iter()
        .flat_map(|&r| angles.iter().map(move |&t| (r, t)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(r, t)| {
            let z = Complex64::from_polar(r, t);
            DiskSample::new(r, t, one_minus_z_pow(z, power) * partial_sum(mu, z, n))
        })
        .collect()
}

/// Agreement between `Re((1 - z)^{1/3} s_n(z))` at `z = e^{2iφ}` and
/// `(2 sin φ)^{1/3} 𝔘_n(φ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryAgreement {
    pub points: usize,
    /// Points skipped because `|𝔘_n(φ)|` was too small to read a sign.
    pub skipped: usize,
    pub sign_mismatches: usize,
    pub max_deviation: f64,
}

impl BoundaryAgreement {
    pub fn agrees(&self) -> bool {
        self.sign_mismatches == 0
    }
}

/// Compares both sides of the boundary identity at `m` interior points of `(0, π)`.
pub fn boundary_identity_check(n: usize, mu: f64, m: usize) -> Result<BoundaryAgreement> {
    let u = build_u_n(n, &Enclosure::point(rat_from_f64(mu)?));
    let mut out = BoundaryAgreement { points: 0, skipped: 0, sign_mismatches: 0, max_deviation: 0.0 };
    for j in 1..=m {
        let phi = PI * j as f64 / (m + 1) as f64;
        let z = Complex64::from_polar(1.0, 2.0 * phi);
        let lhs = (one_minus_z_pow(z, 1.0 / 3.0) * partial_sum(mu, z, n)).re;
        let ev = u.eval(phi);
        let rhs = (2.0 * phi.sin()).cbrt() * ev.value;
        out.points += 1;
        out.max_deviation = out.max_deviation.max((lhs - rhs).abs());
        if ev.value.abs() <= 1e-9 + ev.err {
            out.skipped += 1;
        } else if (lhs > 0.0) != (ev.value > 0.0) {
            out.sign_mismatches += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakConjectureReport {
    pub n: usize,
    pub rho: f64,
    pub mu: f64,
    pub samples: usize,
    /// Minimum of `Re((1 - z)^{2ρ-1} s_n(z))` over the grid.
    pub min_re: f64,
    pub argmin: DiskSample,
    pub passed: bool,
    /// Present for `ρ = 2/3`.
    pub boundary: Option<BoundaryAgreement>,
}

pub fn weak_conjecture_check(
    n: usize,
    rho: f64,
    mu: f64,
    radii: &[f64],
    angles: &[f64],
) -> Result<WeakConjectureReport> {
    check_radii(radii)?;
    let samples = sample(n, mu, 2.0 * rho - 1.0, radii, angles);
    let argmin = samples
        .iter()
        .copied()
        .min_by(|a, b| a.re.total_cmp(&b.re))
        .unwrap_or(DiskSample { r: 0.0, theta: 0.0, re: 1.0, im: 0.0, arg: 0.0 });
    let boundary = if (rho - 2.0 / 3.0).abs() < 1e-15 {
        Some(boundary_identity_check(n, mu, angles.len().max(1))?)
    } else {
        None
    };
    Ok(WeakConjectureReport {
        n,
        rho,
        mu,
        samples: samples.len(),
        min_re: argmin.re,
        argmin,
        passed: argmin.re > 0.0,
        boundary,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub n: usize,
    pub rho: f64,
    pub mu: f64,
    pub samples: usize,
    /// Maximum of `|arg((1 - z)^ρ s_n(z))|` over the grid.
    pub max_abs_arg: f64,
    pub argmax: DiskSample,
    /// `ρπ`.
    pub bound: f64,
    pub passed: bool,
    /// Whether the maximum also stays below `ρπ/2`, the half-angle of the
    /// image of `((1 + z)/(1 - z))^ρ`.
    pub within_half_angle: bool,
}

pub fn subordination_sector_check(
    n: usize,
    rho: f64,
    mu: f64,
    radii: &[f64],
    angles: &[f64],
) -> Result<SectorReport> {
    check_radii(radii)?;
    let samples = sample(n, mu, rho, radii, angles);
    let argmax = samples
        .iter()
        .copied()
        .max_by(|a, b| a.arg.abs().total_cmp(&b.arg.abs()))
        .unwrap_or(DiskSample { r: 0.0, theta: 0.0, re: 1.0, im: 0.0, arg: 0.0 });
    let max_abs_arg = argmax.arg.abs();
    Ok(SectorReport {
        n,
        rho,
        mu,
        samples: samples.len(),
        max_abs_arg,
        argmax,
        bound: rho * PI,
        passed: max_abs_arg < rho * PI,
        within_half_angle: max_abs_arg < rho * PI / 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_zero_is_one() {
        let z = Complex64::new(0.3, -0.7);
        assert_eq!(partial_sum(0.37, z, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn geometric_case() {
        let s = partial_sum(1.0, Complex64::new(0.5, 0.0), 10);
        assert!((s.re - (2.0 - 2f64.powi(-10))).abs() < 1e-15);
        assert_eq!(s.im, 0.0);
    }

    #[test]
    fn closed_form_mu_one_at_right_angle() {
        let c = closed_form_full_sum(1.0, PI / 2.0).unwrap();
        assert!((c - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(closed_form_full_sum(1.0, 0.0).is_err());
        assert!(closed_form_full_sum(1.0, PI).is_err());
    }

    #[test]
    fn closed_form_reflection_conjugates() {
        for &phi in &[0.3, 1.0, 1.4] {
            let a = closed_form_full_sum(0.7, phi).unwrap();
            let b = closed_form_full_sum(0.7, PI - phi).unwrap();
            assert!((a.norm() - b.norm()).abs() < 1e-14);
            // arg a = μ(π/2 - φ), arg b = -μ(π/2 - φ).
            assert!((a.arg() + b.arg()).abs() < 1e-14);
        }
    }

    #[test]
    fn n_zero_weak_conjecture_holds() {
        let radii = [0.5, 0.999];
        for &rho in &[0.1, 0.5, 2.0 / 3.0, 1.0] {
            let r = weak_conjecture_check(0, rho, 0.5, &radii, &angle_grid(400)).unwrap();
            assert!(r.passed, "{rho}");
        }
    }

    #[test]
    fn radii_outside_disk_rejected() {
        assert!(weak_conjecture_check(1, 0.5, 0.5, &[1.0], &[0.0]).is_err());
        assert!(subordination_sector_check(1, 0.5, 0.5, &[0.0], &[0.0]).is_err());
    }
}

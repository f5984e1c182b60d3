//! Closed-form majorants and the composite lower bounds that close the
//! `ρ = 2/3` and `ρ ≈ 1/3` positivity arguments.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::mustar::{mu_star, MuStarResult};
use crate::quad::{c_integral, chi_reference_integral, frak_k, s_integral, QuadResult, DEFAULT_TOL};

/// Width requested for `μ*` enclosures used inside the bounds.
pub const MU_WIDTH: f64 = 1e-13;

/// Relative error assigned to closed-form elementary expressions.
const ELEMENTARY_REL: f64 = 1e-14;
/// Relative error assigned to `Γ`.
const GAMMA_REL: f64 = 1e-13;

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub value: f64,
    pub err: f64,
}

/// A signed combination of components; `value` is `Σ sign_i * component_i`
/// evaluated left to right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: String,
    pub rho: f64,
    pub mu: f64,
    pub value: f64,
    pub err: f64,
    pub components: Vec<Component>,
    pub signs: Vec<f64>,
    pub positive: bool,
    /// Same components combined with the other sign on the last one, for the
    /// regions whose printed formula disagrees with the surrounding pattern.
    pub alternate: Option<f64>,
}

impl BoundReport {
    fn assemble(label: &str, rho: f64, mu: f64, components: Vec<Component>, signs: Vec<f64>) -> Self {
        let value = resum(&components, &signs);
        let err: f64 = components.iter().map(|c| c.err).sum::<f64>()
            + components.len() as f64 * f64::EPSILON * components.iter().map(|c| c.value.abs()).sum::<f64>();
        Self {
            label: label.to_string(),
            rho,
            mu,
            value,
            err,
            positive: value - err > 0.0,
            components,
            signs,
            alternate: None,
        }
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    /// `Σ sign_i * component_i` recomputed from the stored parts.
    pub fn resum(&self) -> f64 {
        resum(&self.components, &self.signs)
    }

    fn widen(&mut self, extra: f64) {
        self.err += extra;
        self.positive = self.value - self.err > 0.0;
    }
}

fn resum(components: &[Component], signs: &[f64]) -> f64 {
    components.iter().zip(signs).fold(0.0, |acc, (c, s)| acc + s * c.value)
}

fn closed(name: &str, value: f64) -> Component {
    Component { name: name.into(), value, err: ELEMENTARY_REL * value.abs() }
}

fn quad(name: &str, r: QuadResult) -> Component {
    Component { name: name.into(), value: r.value, err: r.err }
}

/// `∧(θ) = (1 - (sin θ / θ)^{1-μ}) / sin θ`.
pub fn wedge(theta: f64, mu: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return domain(format!("theta = {theta} outside (0, π)"));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return domain(format!("mu = {mu} outside (0, 1]"));
    }
    let s = theta.sin();
    // 1 - y^{1-μ} = -expm1((1-μ) ln y) with y = sin θ / θ.
    Ok(-((1.0 - mu) * sinc_minus_one(theta).ln_1p()).exp_m1() / s)
}

/// `sin θ / θ - 1`, accurate for small `θ`.
fn sinc_minus_one(theta: f64) -> f64 {
    if theta.abs() > 0.5 {
        return theta.sin() / theta - 1.0;
    }
    let t2 = theta * theta;
    // -θ²/3! + θ⁴/5! - ...; twelve terms reach θ^24/25! < 1e-30 at θ = 0.5.
    let mut term = 1.0;
    let mut acc = 0.0;
    for k in 1..=12 {
        term *= -t2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        acc += term;
    }
    acc
}

/// The majorants `((1-μ)/8) n^{μ-2}` and `(θ/sin θ)((1-μ)/6) n^{μ-2}` of
/// the `𝔄_k` and `𝔅_k` tails, the latter maximised over `θ ≤ theta_max`.
pub fn tail_bounds_ab(n: u32, theta_max: f64, mu: f64) -> Result<(f64, f64)> {
    if n < 1 {
        return domain("tail bounds need n >= 1");
    }
    if !(theta_max > 0.0 && theta_max < PI) {
        return domain(format!("theta_max = {theta_max} outside (0, π)"));
    }
    let p = (n as f64).powf(mu - 2.0);
    let a = (1.0 - mu) / 8.0 * p;
    // θ / sin θ increases on (0, π).
    let b = theta_max / theta_max.sin() * (1.0 - mu) / 6.0 * p;
    Ok((a, b))
}

/// `μ(1-μ) / (2 sin a Γ(μ) (n+1)^{2-μ})`, valid for `μ ∈ [1/3, 1)`.
pub fn delta_tail_bound(n: u32, a: f64, mu: f64) -> Result<f64> {
    if !(1.0 / 3.0..=1.0).contains(&mu) {
        return domain(format!("delta tail bound needs 1/3 <= mu < 1, got {mu}"));
    }
    if !(a > 0.0 && a < PI / 2.0) || n < 1 {
        return domain(format!("need 0 < a < π/2 and n >= 1, got a = {a}, n = {n}"));
    }
    Ok(mu * (1.0 - mu) / (2.0 * a.sin()) / gamma(mu) / ((n + 1) as f64).powf(2.0 - mu))
}

/// `μ cos(2π/3 - μπ/2) - ∧(π/5)`.
pub fn prop21_lower(mu: f64) -> Result<f64> {
    Ok(mu * (2.0 * PI / 3.0 - mu * PI / 2.0).cos() - wedge(PI / 5.0, mu)?)
}

/// `p(φ) = sin(φ/3 + π/6) / sin φ`.
pub fn p_factor(phi: f64) -> f64 {
    (phi / 3.0 + PI / 6.0).sin() / phi.sin()
}

/// `q(φ) = sin φ / sin(φ/3)`.
pub fn q_factor(phi: f64) -> f64 {
    phi.sin() / (phi / 3.0).sin()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Xyz {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Xyz {
    pub fn sum(&self) -> f64 {
        self.x + self.y + self.z
    }
}

/// `X_n`, `Y_n`, `Z_n` for `θ ∈ [a, b]`.
pub fn lemma31_xyz(n: u32, a: f64, b: f64, mu: f64) -> Result<Xyz> {
    if !(0.0 < a && a < b && b <= PI / 2.0 + 1e-15) || n < 1 {
        return domain(format!("need 0 < a < b <= π/2 and n >= 1, got a = {a}, b = {b}"));
    }
    let nf = n as f64;
    let bs = b / b.sin();
    let base = (2.0 * a * nf).powf(mu - 1.0);
    Ok(Xyz {
        x: bs * (1.0 - mu) / (4.0 * nf) * base,
        y: bs * bs * (1.0 - mu) / (3.0 * nf) * base,
        z: PI * mu * (1.0 - mu) * (2.0 * a * (nf + 1.0)).powf(mu - 2.0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "1")]
    R1,
    #[serde(rename = "2")]
    R2,
    #[serde(rename = "31")]
    R31,
    #[serde(rename = "32")]
    R32,
    #[serde(rename = "33")]
    R33,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::R1, Region::R2, Region::R31, Region::R32, Region::R33];

    pub fn name(self) -> &'static str {
        match self {
            Region::R1 => "1",
            Region::R2 => "2",
            Region::R31 => "31",
            Region::R32 => "32",
            Region::R33 => "33",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .map_or_else(|| domain(format!("unknown region {s:?}")), Ok)
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The composite lower bound `L^(region)(ρ)` with `ν = μ*(ρ)`.
///
/// The `μ*` enclosure width is propagated by re-evaluating at both
/// endpoints and adding the spread to the error.
pub fn l_region(region: Region, rho: f64) -> Result<BoundReport> {
    let nu = mu_star(rho, MU_WIDTH)?;
    l_region_with(region, rho, &nu)
}

pub fn l_region_with(region: Region, rho: f64, nu: &MuStarResult) -> Result<BoundReport> {
    let mut report = l_region_at(region, rho, nu.mid())?;
    let lo = l_region_at(region, rho, nu.lo())?;
    let hi = l_region_at(region, rho, nu.hi())?;
    report.widen((lo.value - report.value).abs().max((hi.value - report.value).abs()));
    Ok(report)
}

/// `L^(region)(ρ)` at a fixed `ν`.
pub fn l_region_at(region: Region, rho: f64, nu: f64) -> Result<BoundReport> {
    if !(nu > 1.0 / 3.0 && nu < 1.0) {
        return domain(format!("nu = {nu} outside (1/3, 1)"));
    }
    let label = format!("L{}", region.name());
    let g = gamma(nu);
    let tol = DEFAULT_TOL;
    let lower_sum = |c: f64, scale_x: f64, k1: f64, k2: f64, tail: f64| {
        let cs = c / c.sin();
        cs * (1.0 - nu) / k1 / scale_x.powf(1.0 - nu)
            + cs * cs * (1.0 - nu) / k2 / scale_x.powf(1.0 - nu)
            + tail
    };
    let gamma_part = |v: f64| Component {
        name: "L2".into(),
        value: v,
        err: GAMMA_REL * v.abs() + ELEMENTARY_REL * v.abs(),
    };
    let report = match region {
        Region::R1 => {
            let b = PI / 3.0;
            let s = s_integral(nu, 2.0 * PI, tol)?.scale((rho * b).cos() / b.sin());
            let c = c_integral(nu, 7.0 * PI / 4.0, tol)?.scale(rho);
            let l1 = s + c;
            let q0 = ((nu - 1.0) * PI / 2.0).sin();
            let r0 = (nu * PI / 2.0).sin();
            let l2 = g * (2.0 * q0 * (nu * b / 2.0).sin() / b.sin() - r0 * wedge(b, nu)?);
            let tail = nu * (1.0 - nu) * PI / (2.0 * PI).powf(2.0 - nu);
            let l3 = lower_sum(b, 1.5 * PI, 12.0, 9.0, tail);
            BoundReport::assemble(
                &label,
                rho,
                nu,
                vec![quad("L1", l1), gamma_part(l2), closed("L3", l3)],
                vec![1.0, 1.0, -1.0],
            )
        }
        Region::R2 => {
            let main = (2.0 * (2.0 * PI / 3.0).sin()).powf(-nu) * (PI / 6.0 * (4.0 * rho - nu)).sin();
            let poch4 = nu * (nu + 1.0) * (nu + 2.0) * (nu + 3.0);
            let tail = poch4 / (24.0 * (PI / 3.0).sin());
            BoundReport::assemble(
                &label,
                rho,
                nu,
                vec![closed("limit", main), closed("tail", tail)],
                vec![1.0, -1.0],
            )
        }
        Region::R31 | Region::R32 | Region::R33 => {
            let q0 = (nu * PI / 2.0 - rho * PI).cos();
            let r = |th: f64| (nu * (PI - th) / 2.0 + rho * th - (rho - 0.5) * PI).cos();
            let (l1, c, l3) = match region {
                Region::R31 => {
                    let c = PI / 8.0;
                    let tail = nu * (1.0 - nu) * PI / (2.0 * PI / 3.0).powf(2.0 - nu);
                    (frak_k(PI / 12.0, PI, rho, nu, tol)?, c, lower_sum(c, 2.0 * PI / 5.0, 12.0, 9.0, tail))
                }
                Region::R32 => {
                    let c = PI / 6.0;
                    let tail = nu * (1.0 - nu) / PI.powf(1.0 - nu);
                    let x = (1.0 + 5.0 * rho / 6.0) * PI;
                    (frak_k(PI / 6.0, x, rho, nu, tol)?, c, lower_sum(c, 4.0 * PI / 5.0, 16.0, 12.0, tail))
                }
                _ => {
                    let c = PI / 3.0;
                    let tail = nu * (1.0 - nu) * PI / (5.0 * PI / 3.0).powf(2.0 - nu);
                    (frak_k(PI / 3.0, 1.5 * PI, rho, nu, tol)?, c, lower_sum(c, 4.0 * PI / 3.0, 16.0, 12.0, tail))
                }
            };
            let l2 = g * (nu * q0 - r(c) * wedge(c, nu)?);
            let mut rep = BoundReport::assemble(
                &label,
                rho,
                nu,
                vec![quad("L1", l1), gamma_part(l2), closed("L3", l3)],
                vec![1.0, 1.0, -1.0],
            );
            if region != Region::R31 {
                rep.alternate = Some(l1.value + l2 + l3);
            }
            rep
        }
    };
    Ok(report)
}

/// The final lower bound of the `ρ = 2/3` argument for `n >= 4` and
/// `π/9 < φ < π/5`.
pub fn two_thirds_master_bound() -> Result<BoundReport> {
    let mu = mu_star(2.0 / 3.0, MU_WIDTH)?;
    let mut report = master_at(mu.mid())?;
    let spread = [mu.lo(), mu.hi()]
        .into_iter()
        .map(|m| master_at(m).map(|r| (r.value - report.value).abs()))
        .collect::<Result<Vec<_>>>()?;
    report.widen(spread.into_iter().fold(0.0, f64::max));
    Ok(report)
}

/// The master bound at a fixed `μ`.
pub fn master_at(mu: f64) -> Result<BoundReport> {
    let g = gamma(mu);
    let prop = g * prop21_lower(mu)?;
    let chi = chi_reference_integral(mu, DEFAULT_TOL)?;
    let k = PI / (PI / 5.0).sin();
    let sigma = (1.0 - mu) / 80.0 * k;
    let tau = (1.0 - mu) / 300.0 * k * k;
    let delta = mu * (1.0 - mu) / PI.powf(1.0 - mu);
    Ok(BoundReport::assemble(
        "master-2/3",
        2.0 / 3.0,
        mu,
        vec![
            Component { name: "gamma-prop21".into(), value: prop, err: (GAMMA_REL + ELEMENTARY_REL) * prop.abs() },
            quad("chi", chi),
            closed("sigma", sigma),
            closed("tau", tau),
            closed("delta", delta),
        ],
        vec![1.0, 1.0, -1.0, -1.0, -1.0],
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodScan {
    /// Largest contiguous run of scanned `ρ` around 1/3 with all regions positive.
    pub interval: Option<(f64, f64)>,
    pub points: usize,
    /// Scanned `ρ` where some region failed.
    pub failures: Vec<f64>,
}

/// Scans `ρ` over `[rho_lo, rho_hi]` (plus `1/3` itself) and returns the
/// largest contiguous scanned interval containing `1/3` where every region
/// is positive.
pub fn scan_neighborhood(rho_lo: f64, rho_hi: f64, step: f64) -> Result<NeighborhoodScan> {
    let third = 1.0 / 3.0;
    if !(rho_lo <= third && third <= rho_hi) || !(step > 0.0) {
        return domain(format!("scan [{rho_lo}, {rho_hi}] must contain 1/3 with a positive step"));
    }
    let mut grid: Vec<f64> = Vec::new();
    let count = ((rho_hi - rho_lo) / step).floor() as usize;
    for i in 0..=count {
        grid.push(rho_lo + i as f64 * step);
    }
    grid.push(third);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    use rayon::prelude::*;
    let ok: Vec<bool> = grid
        .par_iter()
        .map(|&rho| {
            let nu = match mu_star(rho, MU_WIDTH) {
                Ok(nu) => nu,
                Err(_) => return false,
            };
            Region::ALL
                .iter()
                .all(|&r| l_region_with(r, rho, &nu).map(|rep| rep.positive).unwrap_or(false))
        })
        .collect();
    let failures = grid.iter().zip(&ok).filter(|(_, ok)| !**ok).map(|(r, _)| *r).collect();
    let centre = grid.iter().position(|&r| r == third).unwrap_or(0);
    let interval = ok[centre].then(|| {
        let mut l = centre;
        while l > 0 && ok[l - 1] {
            l -= 1;
        }
        let mut h = centre;
        while h + 1 < grid.len() && ok[h + 1] {
            h += 1;
        }
        (grid[l], grid[h])
    });
    Ok(NeighborhoodScan { interval, points: grid.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_vanishes_at_zero() {
        let w = wedge(1e-6, 0.5).unwrap();
        assert!(w > 0.0 && w < 1e-6);
        assert!((w / ((1.0 - 0.5) * 1e-6 / 6.0) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn wedge_increases() {
        assert!(wedge(0.3, 0.5).unwrap() < wedge(0.6, 0.5).unwrap());
        assert!(wedge(0.0, 0.5).is_err());
        assert!(wedge(PI, 0.5).is_err());
    }

    #[test]
    fn tail_bounds_scale_with_n() {
        assert_eq!(tail_bounds_ab(4, 0.5, 1.0).unwrap(), (0.0, 0.0));
        let (a4, b4) = tail_bounds_ab(4, 0.5, 0.5).unwrap();
        let (a8, b8) = tail_bounds_ab(8, 0.5, 0.5).unwrap();
        assert!((a8 / a4 - 2f64.powf(-1.5)).abs() < 1e-14);
        assert!((b8 / b4 - 2f64.powf(-1.5)).abs() < 1e-14);
    }

    #[test]
    fn delta_bound_domain() {
        assert!(delta_tail_bound(4, PI / 9.0, 0.3).is_err());
        let small_a = delta_tail_bound(4, PI / 12.0, 0.5).unwrap();
        let big_a = delta_tail_bound(4, PI / 6.0, 0.5).unwrap();
        assert!(small_a > big_a);
        assert!(delta_tail_bound(4, PI / 9.0, 1.0 - 1e-12).unwrap() < 1e-11);
    }

    #[test]
    fn prop21_first_term_vanishes_at_third() {
        let mu = 1.0 / 3.0;
        let first = mu * (2.0 * PI / 3.0 - mu * PI / 2.0).cos();
        assert!(first.abs() < 1e-16);
        assert!((prop21_lower(mu).unwrap() + wedge(PI / 5.0, mu).unwrap()).abs() < 1e-16);
        assert!(0.9 * (2.0 * PI / 3.0 - 0.9 * PI / 2.0).cos() > 0.0);
    }

    #[test]
    fn xyz_vanish_at_mu_one_and_z_decreases() {
        let v = lemma31_xyz(3, PI / 4.0, PI / 3.0, 1.0).unwrap();
        assert_eq!(v.sum(), 0.0);
        let z3 = lemma31_xyz(3, PI / 4.0, PI / 3.0, 0.5).unwrap().z;
        let z4 = lemma31_xyz(4, PI / 4.0, PI / 3.0, 0.5).unwrap().z;
        assert!(z4 < z3);
    }

    #[test]
    fn components_resum_exactly() {
        let r = master_at(0.8468555682895287).unwrap();
        assert_eq!(r.resum(), r.value);
        let l = l_region_at(Region::R33, 1.0 / 3.0, 0.4966913650812994).unwrap();
        assert_eq!(l.resum(), l.value);
    }

    #[test]
    fn region_names_round_trip() {
        for r in Region::ALL {
            assert_eq!(Region::parse(r.name()).unwrap(), r);
        }
        assert!(Region::parse("4").is_err());
    }
}

//! `μ*(ρ)`: the root in `(0, 1]` of `∫₀^{(ρ+1)π} sin(t - ρπ) t^{μ-1} dt`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{rat_from_f64, to_f64, Enclosure};
use crate::quad::{fractional_osc_integral, QuadResult, DEFAULT_TOL};
use crate::trig::TrigKind;

/// Left end of the initial bracket.
pub const BRACKET_LO: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuStarResult {
    pub rho: f64,
    pub enclosure: Enclosure,
    /// Defect integral at the enclosure midpoint.
    pub residual: QuadResult,
    /// Defect integrals at the two endpoints; their signs differ.
    pub at_lo: QuadResult,
    pub at_hi: QuadResult,
}

impl MuStarResult {
    // Endpoints are binary floats, so these conversions are exact.
    pub fn lo(&self) -> f64 {
        to_f64(self.enclosure.lo())
    }

    pub fn hi(&self) -> f64 {
        to_f64(self.enclosure.hi())
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo() + self.hi())
    }

    pub fn width(&self) -> f64 {
        self.hi() - self.lo()
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 1.0) {
        return domain(format!("rho = {rho} outside (0, 1]"));
    }
    Ok(())
}

/// `∫₀^{(ρ+1)π} sin(t - ρπ) t^{μ-1} dt`.
pub fn defect_integral(rho: f64, mu: f64, tol: f64) -> Result<QuadResult> {
    check_rho(rho)?;
    fractional_osc_integral(TrigKind::Sin, -rho * PI, mu, (rho + 1.0) * PI, tol)
}

/// Sign of a result when it is certain given its error, else 0.
fn verified_sign(r: &QuadResult) -> i8 {
    if r.lo() > 0.0 {
        1
    } else if r.hi() < 0.0 {
        -1
    } else {
        0
    }
}

/// Encloses `μ*(ρ)` by bisection on verified signs of the defect integral.
///
/// Bisection stops at `width` or when the sign at the midpoint can no
/// longer be decided at working precision; the returned enclosure may then
/// be wider than requested (compare [`MuStarResult::width`]).
pub fn mu_star(rho: f64, width: f64) -> Result<MuStarResult> {
    mu_star_with_tol(rho, width, DEFAULT_TOL)
}

pub fn mu_star_with_tol(rho: f64, width: f64, tol: f64) -> Result<MuStarResult> {
    check_rho(rho)?;
    if !(width > 0.0) {
        return domain(format!("width {width} must be positive"));
    }
    let f = |mu: f64| defect_integral(rho, mu, tol);
    let (mut lo, mut hi) = (BRACKET_LO, 1.0);
    let (mut flo, mut fhi) = (f(lo)?, f(hi)?);
    let slo = verified_sign(&flo);
    if slo == 0 {
        return Err(Error::NoSignChange(format!("defect sign undecided at mu = {lo}")));
    }
    match verified_sign(&fhi) {
        s if s == -slo => {}
        0 => {
            // The root sits at (or within rounding of) the right end of the
            // bracket; accept [1 - width, 1] once its left end is verified.
            let mut l = 1.0 - width;
            while 1.0 - l > width {
                l = l.next_up();
            }
            let fl = f(l)?;
            if verified_sign(&fl) != slo {
                return Err(Error::NoSignChange(format!(
                    "defect integral at mu = {l} does not share the sign at mu = {lo}"
                )));
            }
            return finish(rho, l, 1.0, fl, fhi, tol);
        }
        _ => {
            return Err(Error::NoSignChange(format!(
                "defect integral has the same sign at {lo} and {hi} for rho = {rho}"
            )))
        }
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        match verified_sign(&fm) {
            0 => break,
            s if s == slo => {
                lo = mid;
                flo = fm;
            }
            _ => {
                hi = mid;
                fhi = fm;
            }
        }
    }
    finish(rho, lo, hi, flo, fhi, tol)
}

fn finish(rho: f64, lo: f64, hi: f64, at_lo: QuadResult, at_hi: QuadResult, tol: f64) -> Result<MuStarResult> {
    let residual = defect_integral(rho, 0.5 * (lo + hi), tol)?;
    Ok(MuStarResult {
        rho,
        enclosure: Enclosure::new(rat_from_f64(lo)?, rat_from_f64(hi)?)?,
        residual,
        at_lo,
        at_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_one_mu_one_vanishes() {
        assert!(defect_integral(1.0, 1.0, 1e-13).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn rho_one_root_is_at_one() {
        let r = mu_star(1.0, 1e-9).unwrap();
        assert!(r.enclosure.contains_f64(1.0));
        assert!(r.width() <= 1e-9);
    }

    #[test]
    fn bracket_endpoints_have_opposite_verified_signs() {
        let r = mu_star(2.0 / 3.0, 1e-10).unwrap();
        assert_eq!(verified_sign(&r.at_lo), -verified_sign(&r.at_hi));
        assert_ne!(verified_sign(&r.at_lo), 0);
    }

    #[test]
    fn invalid_rho_is_rejected() {
        assert!(mu_star(0.0, 1e-6).is_err());
        assert!(mu_star(1.5, 1e-6).is_err());
    }
}

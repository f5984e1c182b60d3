use num_traits::Zero;
use serde::Serialize;

use super::sum::as_integer;
use super::{chebyshev_t, chebyshev_u, TrigKind, TrigSum};
use crate::error::Result;
use crate::exact::{int, to_f64, Enclosure, IntervalPolynomial, Rational};
use crate::Error;

/// The angle change `θ = scale * s + shift * π`, followed by `x = cos s`
/// or, when `squared`, `x = cos² s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    #[serde(with = "crate::exact::rational_serde")]
    pub scale: Rational,
    #[serde(with = "crate::exact::rational_serde")]
    pub shift: Rational,
    pub squared: bool,
}

impl Substitution {
    pub fn cos(scale: Rational, shift: Rational) -> Self {
        Self { scale, shift, squared: false }
    }

    pub fn cos_squared(scale: Rational, shift: Rational) -> Self {
        Self { scale, shift, squared: true }
    }

    /// `x = cos²(θ/3)`, used for `ω_n`.
    pub fn omega() -> Self {
        Self::cos_squared(int(3), int(0))
    }

    /// `θ = 3t - π`, `x = cos t`: the variable of the `Q` and `R` cases.
    pub fn u_n_to_t() -> Self {
        Self::cos(int(3), int(-1))
    }

    /// The new variable `s` for a given `θ`.
    pub fn s_of(&self, theta: f64) -> f64 {
        (theta - to_f64(&self.shift) * std::f64::consts::PI) / to_f64(&self.scale)
    }

    pub fn x_of(&self, theta: f64) -> f64 {
        let c = self.s_of(theta).cos();
        if self.squared {
            c * c
        } else {
            c
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prefactor {
    One,
    /// `sin s` in the substituted variable.
    SinS,
}

/// `sum(θ) = prefactor(s) * poly(x)` under `substitution`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub label: String,
    pub prefactor: Prefactor,
    pub poly: IntervalPolynomial,
    pub substitution: Substitution,
}

impl Reduction {
    /// Right-hand side evaluated at `θ` using coefficient midpoints.
    pub fn eval_f64(&self, theta: f64) -> f64 {
        let x = self.substitution.x_of(theta);
        let p = self.poly.midpoint().eval_f64(x);
        match self.prefactor {
            Prefactor::One => p,
            Prefactor::SinS => self.substitution.s_of(theta).sin() * p,
        }
    }
}

/// Rewrites `sum` as `prefactor * polynomial` using `cos(m s) = T_m(cos s)`
/// and `sin(m s) = sin s U_{m-1}(cos s)`.
///
/// Fails when some frequency is not an integer multiple of the new
/// variable, when a phase survives the substitution, when sine and cosine
/// terms are mixed, or when a squared substitution meets an odd polynomial.
pub fn reduce_to_polynomial(sum: &TrigSum, sub: &Substitution) -> Result<Reduction> {
    let moved = sum.substitute(&sub.scale, &sub.shift);
    let mut kind: Option<TrigKind> = None;
    let mut coeffs: Vec<Enclosure> = Vec::new();
    for t in moved.terms() {
        let m = as_integer(&t.freq).ok_or_else(|| {
            Error::Incommensurate(format!(
                "frequency {} is not an integer multiple of the substituted angle",
                t.freq
            ))
        })?;
        if !t.phase.is_zero() {
            return Err(Error::Incommensurate(format!(
                "phase {}π remains after substitution",
                t.phase
            )));
        }
        if t.kind == TrigKind::Sin && m == 0 {
            continue;
        }
        match kind {
            Some(k) if k != t.kind => {
                return Err(Error::Incommensurate("sine and cosine terms are mixed".into()))
            }
            _ => kind = Some(t.kind),
        }
        let basis = match t.kind {
            TrigKind::Cos => chebyshev_t(m as usize),
            TrigKind::Sin => chebyshev_u(m as usize - 1),
        };
        if coeffs.len() < basis.coeffs().len() {
            coeffs.resize(basis.coeffs().len(), Enclosure::zero());
        }
        for (slot, b) in coeffs.iter_mut().zip(basis.coeffs()) {
            if !b.is_zero() {
                *slot = &*slot + &t.coeff.scale(b);
            }
        }
    }
    if sub.squared {
        if coeffs.iter().skip(1).step_by(2).any(|c| !(c.is_point() && c.lo().is_zero())) {
            return Err(Error::Incommensurate("polynomial is not even, cannot use cos²".into()));
        }
        coeffs = coeffs.into_iter().step_by(2).collect();
    }
    let prefactor = match kind {
        Some(TrigKind::Sin) => Prefactor::SinS,
        _ => Prefactor::One,
    };
    Ok(Reduction {
        label: sum.label().to_string(),
        prefactor,
        poly: IntervalPolynomial::new(coeffs),
        substitution: sub.clone(),
    })
}

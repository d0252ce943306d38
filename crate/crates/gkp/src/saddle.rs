//! Saddle-point machinery for the stretched-power regime
//! (β′ = 0, α > 0, β > 0, γ′ > 0).
//!
//! The exponential part of the generating function is
//!
//! ```text
//! f(z, x) = (γ′x/β)·((1−αz)^{−β/α} − 1) − (γ/α)·ln(1−αz)
//! ```
//!
//! and the saddle point `r = r(x)` solves `z·f_z(z, x) = n`. Since `z·f_z` is
//! increasing from 0 to ∞ on `(0, 1/α)` the root exists, is unique, and is
//! found by safeguarded Newton iteration with a bisection fallback; the
//! initial guess comes from the asymptotic solution
//! `1 − αr ≈ (γ′x/(αn))^{α/(α+β)}`.
//!
//! The quasi-power predictions are `E X_n ≈ h′_n = f_x(r(1), 1)` and
//! `var X_n ≈ h′_n + h″_n` with `h″_n = r′(1)·f_zx(r(1), 1)` and
//! `r′(x) = −r·f_zx / (f_z + r·f_zz)` from implicit differentiation of the
//! saddle equation.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::regime::{classify, Regime};
use crate::scalar::{rat_to_f64, Rat};

pub const DEFAULT_SADDLE_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200;

/// Evaluators for `f(z, x)` and the partial derivatives the quasi-power
/// analysis needs, plus the saddle solver.
#[derive(Clone, Debug)]
pub struct SaddleContext {
    alpha: f64,
    beta: f64,
    gamma: f64,
    gamma_p: f64,
    tol: f64,
}

impl SaddleContext {
    pub fn new(params: &GkpParams) -> Result<Self> {
        Self::with_tolerance(params, DEFAULT_SADDLE_TOL)
    }

    pub fn with_tolerance(params: &GkpParams, tol: f64) -> Result<Self> {
        match classify(params) {
            Regime::GaussianStretchedPower => {}
            other => {
                return Err(Error::WrongRegime {
                    expected: "GaussianStretchedPower",
                    found: other.tag(),
                })
            }
        }
        Ok(Self {
            alpha: rat_to_f64(&params.alpha),
            beta: rat_to_f64(&params.beta),
            gamma: rat_to_f64(&params.gamma),
            gamma_p: rat_to_f64(&params.gamma_p),
            tol,
        })
    }

    fn pole(&self, z: f64) -> f64 {
        1.0 - self.alpha * z
    }

    pub fn f(&self, z: f64, x: f64) -> f64 {
        let w = self.pole(z);
        self.gamma_p * x / self.beta * (w.powf(-self.beta / self.alpha) - 1.0)
            - self.gamma / self.alpha * w.ln()
    }

    pub fn f_z(&self, z: f64, x: f64) -> f64 {
        let w = self.pole(z);
        self.gamma_p * x * w.powf(-1.0 - self.beta / self.alpha) + self.gamma / w
    }

    pub fn f_x(&self, z: f64) -> f64 {
        let w = self.pole(z);
        self.gamma_p / self.beta * (w.powf(-self.beta / self.alpha) - 1.0)
    }

    pub fn f_zx(&self, z: f64) -> f64 {
        self.gamma_p * self.pole(z).powf(-1.0 - self.beta / self.alpha)
    }

    pub fn f_zz(&self, z: f64, x: f64) -> f64 {
        let w = self.pole(z);
        self.gamma_p * x * (self.alpha + self.beta) * w.powf(-2.0 - self.beta / self.alpha)
            + self.gamma * self.alpha * w.powi(-2)
    }

    pub fn f_zzx(&self, z: f64) -> f64 {
        self.gamma_p * (self.alpha + self.beta) * self.pole(z).powf(-2.0 - self.beta / self.alpha)
    }

    pub fn f_zzz(&self, z: f64, x: f64) -> f64 {
        let w = self.pole(z);
        self.gamma_p
            * x
            * (self.alpha + self.beta)
            * (2.0 * self.alpha + self.beta)
            * w.powf(-3.0 - self.beta / self.alpha)
            + 2.0 * self.gamma * self.alpha.powi(2) * w.powi(-3)
    }

    /// Left side of the saddle equation, `z·f_z(z, x)`.
    pub fn saddle_equation(&self, z: f64, x: f64) -> f64 {
        z * self.f_z(z, x)
    }

    /// Solves `z·f_z(z, x) = n` on `(0, 1/α)`.
    pub fn solve(&self, x: f64, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidInput("saddle equation needs n >= 1".into()));
        }
        let target = n as f64;
        let mut lo = 0.0f64;
        let mut hi = (1.0 - 1e-15) / self.alpha;

        // asymptotic initial guess
        let exponent = self.alpha / (self.alpha + self.beta);
        let guess = (1.0 - (self.gamma_p * x / (self.alpha * target)).powf(exponent)) / self.alpha;
        let mut r = if guess.is_finite() {
            guess.clamp(hi * 1e-6, hi * (1.0 - 1e-9))
        } else {
            hi / 2.0
        };

        for _ in 0..MAX_ITERATIONS {
            let value = self.saddle_equation(r, x);
            let residual = value - target;
            if residual.abs() <= self.tol * target {
                return Ok(r);
            }
            if residual > 0.0 {
                hi = r;
            } else {
                lo = r;
            }
            let slope = self.f_z(r, x) + r * self.f_zz(r, x);
            let newton = r - residual / slope;
            r = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Err(Error::NoConvergence {
            iters: MAX_ITERATIONS,
            tol: self.tol,
        })
    }
}

/// Saddle point `r(x)` for a stretched-power parameter point; `x` is accepted
/// in the window `[1/2, 2]` around 1.
pub fn saddle_solve(params: &GkpParams, x: &Rat, n: usize) -> Result<f64> {
    saddle_solve_with_tolerance(params, x, n, DEFAULT_SADDLE_TOL)
}

pub fn saddle_solve_with_tolerance(params: &GkpParams, x: &Rat, n: usize, tol: f64) -> Result<f64> {
    let xf = rat_to_f64(x);
    if !x.is_positive() || !(0.5..=2.0).contains(&xf) {
        return Err(Error::InvalidInput(format!(
            "sample point x = {xf} is outside the accepted window [1/2, 2]"
        )));
    }
    SaddleContext::with_tolerance(params, tol)?.solve(xf, n)
}

/// Quasi-power predictions at a given n.
#[derive(Clone, Copy, Debug)]
pub struct QuasiPowerMoments {
    /// Saddle point r(1).
    pub r: f64,
    /// h′_n = f_x(r(1), 1); the predicted mean.
    pub h1: f64,
    /// h″_n = r′(1)·f_zx(r(1), 1); negative in this regime.
    pub h2: f64,
}

impl QuasiPowerMoments {
    pub fn predicted_mean(&self) -> f64 {
        self.h1
    }

    pub fn predicted_variance(&self) -> f64 {
        self.h1 + self.h2
    }
}

/// Computes `(h′_n, h″_n)` at x = 1 for a stretched-power point.
pub fn quasi_power_moments(params: &GkpParams, n: usize) -> Result<QuasiPowerMoments> {
    let ctx = SaddleContext::new(params)?;
    let r = ctx.solve(1.0, n)?;
    let h1 = ctx.f_x(r);
    let r_prime = -r * ctx.f_zx(r) / (ctx.f_z(r, 1.0) + r * ctx.f_zz(r, 1.0));
    let h2 = r_prime * ctx.f_zx(r);
    Ok(QuasiPowerMoments { r, h1, h2 })
}

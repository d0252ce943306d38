//! Singularity data for the linear-Gaussian regimes.
//!
//! For β′ > 0 with α, β not both zero, the generating function has a movable
//! algebraic singularity ρ(x), and the limit law is Gaussian with
//! `μ_n ~ −𝔪(ρ)·n` and `σ_n² ~ −𝔳(ρ)·n`, where `𝔪(f) = f′(1)/f(1)` and
//! `𝔳(f) = f″(1)/f(1) + f′(1)/f(1) − (f′(1)/f(1))²`.
//!
//! Closed forms for ρ(1), 𝔪(ρ) and 𝔳(ρ) are evaluated per case; the
//! variability witness `𝔳(ρ(1)/ρ(x)) = −𝔳(ρ)` is additionally recomputed from
//! second-order finite differences of ρ(x) at x = 1 so the hypothesis behind
//! the Gaussian limit is machine-checked rather than assumed.

use num_traits::One;

use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::regime::{classify, GaussianCase, Regime};
use crate::scalar::{rat_to_f64, Rat};

/// Singularity constants of a linear-Gaussian parameter point.
#[derive(Clone, Debug)]
pub struct SingularityData {
    pub case: GaussianCase,
    /// ρ(1), the dominant singularity at x = 1; positive.
    pub rho1: f64,
    /// 𝔪(ρ) < 0; the mean satisfies μ_n ~ −𝔪(ρ)·n.
    pub mean_coef: f64,
    /// 𝔳(ρ) < 0; the variance satisfies σ_n² ~ −𝔳(ρ)·n.
    pub var_coef: f64,
    /// κ = 1 + γ′/β′, exact.
    pub kappa: Rat,
    /// 𝔳(ρ(1)/ρ(x)) from finite differences; nonzero by the variability
    /// condition and equal to −𝔳(ρ) up to truncation error.
    pub variability_witness: f64,
}

/// ρ(x) for the three cases, as a float function of x > 0.
pub fn rho_at(params: &GkpParams, case: GaussianCase, x: f64) -> f64 {
    let a = rat_to_f64(&params.alpha);
    let b = rat_to_f64(&params.beta);
    let bp = rat_to_f64(&params.beta_p);
    match case {
        GaussianCase::I => (1.0 - (1.0 + b / (bp * x)).powf(-a / b)) / a,
        GaussianCase::II => (1.0 + b / (bp * x)).ln() / b,
        GaussianCase::III => (1.0 - (-a / (bp * x)).exp()) / a,
    }
}

/// `𝔳(g)` of `g(x) = ρ(1)/ρ(x)` by second-order central differences at x = 1.
fn variability_from_differences(params: &GkpParams, case: GaussianCase) -> f64 {
    let h = 1e-4;
    let rho1 = rho_at(params, case, 1.0);
    let g = |x: f64| rho1 / rho_at(params, case, x);
    let g_plus = g(1.0 + h);
    let g_minus = g(1.0 - h);
    let d1 = (g_plus - g_minus) / (2.0 * h);
    let d2 = (g_plus - 2.0 + g_minus) / (h * h); // g(1) = 1
    d2 + d1 - d1 * d1
}

/// Closed-form singularity constants for a linear-Gaussian point.
pub fn singularity_data(params: &GkpParams) -> Result<SingularityData> {
    let regime = classify(params);
    let case = match regime {
        Regime::GaussianLinear(case) => case,
        other => {
            return Err(Error::WrongRegime {
                expected: "GaussianLinear",
                found: other.tag(),
            })
        }
    };
    let a = rat_to_f64(&params.alpha);
    let b = rat_to_f64(&params.beta);
    let bp = rat_to_f64(&params.beta_p);
    let kappa = Rat::one() + &params.gamma_p / &params.beta_p;

    let (rho1, mean_coef, var_coef) = match case {
        GaussianCase::I => {
            let w = (1.0 + b / bp).powf(-a / b);
            let rho1 = (1.0 - w) / a;
            let mean = -a * (1.0 + b / bp).powf(-1.0 - a / b) / (bp * (1.0 - w));
            let var = (1.0 + b / bp).powf(-2.0 - a / b) / (rho1 * bp).powi(2)
                * ((bp / a) * (1.0 - w) - 1.0);
            (rho1, mean, var)
        }
        GaussianCase::II => {
            let l = (1.0 + b / bp).ln();
            let rho1 = l / b;
            let mean = -b / ((bp + b) * l);
            let var = ((bp / b) * l - 1.0) / (rho1 * (bp + b)).powi(2);
            (rho1, mean, var)
        }
        GaussianCase::III => {
            let e = (-a / bp).exp();
            let rho1 = (1.0 - e) / a;
            let mean = a * e / (bp * (e - 1.0));
            let var = e / (rho1 * bp).powi(2) * ((bp / a) * (1.0 - e) - 1.0);
            (rho1, mean, var)
        }
    };

    Ok(SingularityData {
        case,
        rho1,
        mean_coef,
        var_coef,
        kappa,
        variability_witness: variability_from_differences(params, case),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn case_i_reference_point() {
        // ρ(x) = 1/(x+1) here, so everything is elementary
        let s = singularity_data(&GkpParams::from_ints(1, 1, 0, 0, 1, 1)).unwrap();
        assert!((s.rho1 - 0.5).abs() < 1e-14);
        assert!((s.mean_coef + 0.5).abs() < 1e-14);
        assert!((s.var_coef + 0.25).abs() < 1e-14);
        assert_eq!(s.kappa, rat(2, 1));
        assert!((s.variability_witness - 0.25).abs() < 1e-6);
    }

    #[test]
    fn case_ii_reference_point() {
        let s = singularity_data(&GkpParams::from_ints(0, 1, 0, 0, 1, 1)).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!((s.mean_coef - (-1.0 / (2.0 * ln2))).abs() < 1e-12);
        assert!((s.var_coef - (ln2 - 1.0) / (2.0 * ln2).powi(2)).abs() < 1e-12);
        assert!((s.mean_coef + 0.721348).abs() < 1e-5);
        assert!((s.var_coef + 0.159669).abs() < 1e-5);
    }

    #[test]
    fn case_iii_reference_point() {
        let s = singularity_data(&GkpParams::from_ints(1, 0, 1, 0, 1, 1)).unwrap();
        let e = (-1.0f64).exp();
        assert!((s.mean_coef - e / (e - 1.0)).abs() < 1e-12);
        assert!((s.mean_coef + 0.581977).abs() < 1e-5);
        assert!((s.var_coef + 0.338697).abs() < 2e-5);
        assert!((s.rho1 - (1.0 - e)).abs() < 1e-14);
    }

    #[test]
    fn witness_matches_closed_form_on_a_grid() {
        let grid = [
            GkpParams::parse("1,1,0,0,1,1").unwrap(),
            GkpParams::parse("1/2,2,1,0,1,0").unwrap(),
            GkpParams::parse("2,1/2,0,0,1/3,2").unwrap(),
            GkpParams::parse("0,1,0,0,1,1").unwrap(),
            GkpParams::parse("0,3,2,0,1/2,1").unwrap(),
            GkpParams::parse("1,0,1,0,1,1").unwrap(),
            GkpParams::parse("1/3,0,0,0,2,1").unwrap(),
        ];
        for p in grid {
            let s = singularity_data(&p).unwrap();
            assert!(s.rho1 > 0.0, "{p}");
            assert!(s.mean_coef < 0.0, "{p}");
            assert!(s.var_coef < 0.0, "{p}");
            assert!(s.variability_witness != 0.0, "{p}");
            assert!(
                (s.variability_witness + s.var_coef).abs() < 1e-5,
                "{p}: witness {} vs closed form {}",
                s.variability_witness,
                -s.var_coef
            );
        }
    }

    #[test]
    fn wrong_regime_is_reported() {
        let err = singularity_data(&GkpParams::from_ints(0, 0, 1, 0, 0, 1)).unwrap_err();
        assert!(matches!(err, Error::WrongRegime { .. }));
    }
}

//! Centering and scaling functions per regime, and the exact reference laws
//! where the law is exact at every n.

use num_traits::{One, Zero};

use crate::dist::RowDistribution;
use crate::error::{Error, Result};
use crate::indicator::{bernoulli_convolution, indicator_probabilities};
use crate::laws::{binomial_pmf, conditioned_nb_poisson};
use crate::params::GkpParams;
use crate::regime::{classify, Regime};
use crate::scalar::{rat_to_f64, Rat};
use crate::singularity::{singularity_data, SingularityData};

/// The classified law together with its centering `a_n`, scaling `b_n`, and
/// limit descriptor. For exact regimes (binomial, conditioned NB, indicator
/// sums, degenerate) the reference law is exact at every n, not only in the
/// limit; degenerate laws use the convention `b_n = 1` since their standard
/// deviation vanishes.
#[derive(Clone, Debug)]
pub struct AsymptoticLaw {
    params: GkpParams,
    regime: Regime,
    singularity: Option<SingularityData>,
}

impl AsymptoticLaw {
    pub fn regime(&self) -> &Regime {
        &self.regime
    }

    pub fn params(&self) -> &GkpParams {
        &self.params
    }

    pub fn singularity(&self) -> Option<&SingularityData> {
        self.singularity.as_ref()
    }

    /// Smallest n at which `scale` is guaranteed positive.
    pub fn n0(&self) -> usize {
        match &self.regime {
            Regime::GaussianLogN { .. } | Regime::GaussianNOverLogN | Regime::IndicatorSum => 2,
            Regime::DegenerateAtZero | Regime::DegenerateAtN => 0,
            _ => 1,
        }
    }

    /// Centering a_n.
    pub fn center(&self, n: usize) -> f64 {
        let nf = n as f64;
        match &self.regime {
            Regime::DegenerateAtZero => 0.0,
            Regime::DegenerateAtN => nf,
            Regime::BinomialExact { p } => nf * rat_to_f64(p),
            Regime::GaussianLinear(_) => -self.singularity.as_ref().expect("cached").mean_coef * nf,
            Regime::NbConditionedPoisson { .. } => {
                nf - rat_to_f64(&(&self.params.gamma / &self.params.beta_p))
            }
            Regime::GaussianLogN { coef } => rat_to_f64(coef) * nf.ln(),
            Regime::GaussianNOverLogN => nf / nf.ln(),
            Regime::GaussianStretchedPower => {
                let (a, b, gp) = self.stretched_constants();
                gp.powf(a / (a + b)) * (a * nf).powf(b / (a + b)) / b
            }
            Regime::PoissonComplement { lambda } => nf - rat_to_f64(lambda),
            Regime::IndicatorSum => crate::indicator::indicator_moment_expansion(&self.params, n)
                .map(|(m, _)| m)
                .unwrap_or(0.0),
            Regime::Unsupported => f64::NAN,
        }
    }

    /// Scaling b_n; positive for `n ≥ n0`.
    pub fn scale(&self, n: usize) -> f64 {
        let nf = n as f64;
        match &self.regime {
            Regime::DegenerateAtZero | Regime::DegenerateAtN => 1.0,
            Regime::BinomialExact { p } => {
                let pf = rat_to_f64(p);
                (nf * pf * (1.0 - pf)).sqrt()
            }
            Regime::GaussianLinear(_) => {
                (-self.singularity.as_ref().expect("cached").var_coef * nf).sqrt()
            }
            Regime::NbConditionedPoisson { .. } => {
                rat_to_f64(&(&self.params.gamma / &self.params.beta_p)).sqrt()
            }
            Regime::GaussianLogN { coef } => (rat_to_f64(coef) * nf.ln()).sqrt(),
            Regime::GaussianNOverLogN => nf.sqrt() / nf.ln(),
            Regime::GaussianStretchedPower => {
                let (a, b, gp) = self.stretched_constants();
                (gp.powf(a / (a + b)) * a * (a * nf).powf(b / (a + b)) / (b * (a + b))).sqrt()
            }
            Regime::PoissonComplement { lambda } => rat_to_f64(lambda).sqrt(),
            Regime::IndicatorSum => {
                let var = crate::indicator::indicator_moment_expansion(&self.params, n)
                    .map(|(_, v)| v)
                    .unwrap_or(0.0);
                if var > 0.0 {
                    var.sqrt()
                } else {
                    1.0
                }
            }
            Regime::Unsupported => f64::NAN,
        }
    }

    fn stretched_constants(&self) -> (f64, f64, f64) {
        (
            rat_to_f64(&self.params.alpha),
            rat_to_f64(&self.params.beta),
            rat_to_f64(&self.params.gamma_p),
        )
    }

    /// What the standardized variable converges to.
    pub fn limit_descriptor(&self) -> String {
        match &self.regime {
            Regime::DegenerateAtZero => "X_n = 0 a.s.".into(),
            Regime::DegenerateAtN => "X_n = n a.s.".into(),
            Regime::BinomialExact { p } => {
                format!(
                    "X_n ~ Bin(n, {}) exactly",
                    crate::scalar::format_rational(p)
                )
            }
            Regime::GaussianLinear(_)
            | Regime::GaussianLogN { .. }
            | Regime::GaussianNOverLogN
            | Regime::GaussianStretchedPower => "(X_n - a_n)/b_n => N(0,1)".into(),
            Regime::NbConditionedPoisson { r, p } => format!(
                "X_n ~ NB({}, {}) conditioned on a Pois({}) sum, exactly",
                crate::scalar::format_rational(r),
                crate::scalar::format_rational(p),
                crate::scalar::format_rational(p),
            ),
            Regime::PoissonComplement { lambda } => {
                format!(
                    "n - X_n => Pois({})",
                    crate::scalar::format_rational(lambda)
                )
            }
            Regime::IndicatorSum => "X_n = sum of independent indicators, exactly".into(),
            Regime::Unsupported => "unsupported".into(),
        }
    }

    /// The exact finite-n law for the exact regimes, `None` for the purely
    /// asymptotic ones.
    pub fn exact_law(&self, n: usize) -> Option<Result<RowDistribution<Rat>>> {
        match &self.regime {
            Regime::DegenerateAtZero => Some(point_mass(n, 0)),
            Regime::DegenerateAtN => Some(point_mass(n, n)),
            Regime::BinomialExact { p } => {
                Some(RowDistribution::from_weights(n, &binomial_pmf(n, p)))
            }
            Regime::NbConditionedPoisson { r, p } => Some(conditioned_nb_poisson(r, p, p, n)),
            Regime::IndicatorSum => {
                Some(indicator_probabilities(&self.params, n).map(|ps| bernoulli_convolution(&ps)))
            }
            _ => None,
        }
    }
}

fn point_mass(n: usize, at: usize) -> Result<RowDistribution<Rat>> {
    let mut w = vec![Rat::zero(); n + 1];
    w[at] = Rat::one();
    RowDistribution::from_weights(n, &w)
}

/// Builds the asymptotic law of a classifiable point.
pub fn asymptotic_law(params: &GkpParams) -> Result<AsymptoticLaw> {
    let regime = classify(params);
    if regime == Regime::Unsupported {
        return Err(Error::WrongRegime {
            expected: "a classifiable regime",
            found: regime.tag(),
        });
    }
    let singularity = match regime {
        Regime::GaussianLinear(_) => Some(singularity_data(params)?),
        _ => None,
    };
    Ok(AsymptoticLaw {
        params: params.clone(),
        regime,
        singularity,
    })
}

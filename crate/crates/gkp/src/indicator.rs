//! The β = β′ = 0 family, where X_n is exactly a sum of independent
//! indicators with `P(I_k = 1) = (α′k + γ′)/((α′+α)k + γ′+γ)`.

use num_traits::{One, Signed, Zero};

use crate::dist::RowDistribution;
use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::regime::classify;
use crate::scalar::{rat_to_f64, Rat};

fn require_indicator_family(params: &GkpParams) -> Result<()> {
    if params.beta.is_zero() && params.beta_p.is_zero() {
        Ok(())
    } else {
        Err(Error::WrongRegime {
            expected: "IndicatorSum",
            found: classify(params).tag(),
        })
    }
}

/// Success probabilities `p_1 .. p_n` of the indicators, exact.
pub fn indicator_probabilities(params: &GkpParams, n: usize) -> Result<Vec<Rat>> {
    require_indicator_family(params)?;
    if (&params.alpha + &params.alpha_p + &params.gamma + &params.gamma_p).is_zero() {
        return Err(Error::InvalidInput(
            "all of α, α′, γ, γ′ vanish; the product form is empty".into(),
        ));
    }
    let mut probs = Vec::with_capacity(n);
    for k in 1..=n {
        let kk = Rat::from_integer(k.into());
        let denom = (&params.alpha_p + &params.alpha) * &kk + &params.gamma_p + &params.gamma;
        if denom.is_zero() {
            return Err(Error::ZeroDenominator { k });
        }
        let numer = &params.alpha_p * &kk + &params.gamma_p;
        let p = numer / denom;
        debug_assert!(
            !params.all_nonnegative() || (!p.is_negative() && p <= Rat::one()),
            "indicator probability out of [0,1] for nonnegative parameters"
        );
        probs.push(p);
    }
    Ok(probs)
}

/// Exact law of the Bernoulli convolution `I_1 + … + I_n`.
pub fn bernoulli_convolution(probs: &[Rat]) -> RowDistribution<Rat> {
    let n = probs.len();
    let mut pmf = vec![Rat::zero(); n + 1];
    pmf[0] = Rat::one();
    for (i, p) in probs.iter().enumerate() {
        let q = Rat::one() - p;
        for k in (0..=i + 1).rev() {
            let stay = if k <= i {
                pmf[k].clone() * &q
            } else {
                Rat::zero()
            };
            let step = if k > 0 {
                pmf[k - 1].clone() * p
            } else {
                Rat::zero()
            };
            pmf[k] = stay + step;
        }
    }
    RowDistribution::from_weights(n, &pmf).expect("Bernoulli convolution is a distribution")
}

/// Two-term expansions of the mean and variance of the indicator sum,
///
/// ```text
/// E X_n   ≈ α′n/(α′+α) + (γ′α − γα′)/(α+α′)²·log n
/// var X_n ≈ αα′n/(α′+α)² + (α′²γ + α²γ′ − αα′(γ+γ′))/(α+α′)³·log n
/// ```
///
/// with the O(1) terms omitted. Needs α + α′ > 0.
pub fn indicator_moment_expansion(params: &GkpParams, n: usize) -> Result<(f64, f64)> {
    require_indicator_family(params)?;
    let a = &params.alpha;
    let ap = &params.alpha_p;
    let g = &params.gamma;
    let gp = &params.gamma_p;
    let total = a + ap;
    if total.is_zero() {
        return Err(Error::InvalidInput("expansions need α + α′ > 0".into()));
    }
    let ln_n = (n as f64).ln();
    let nf = n as f64;

    let mean_lin = rat_to_f64(&(ap / &total));
    let mean_log = rat_to_f64(&((gp * a - g * ap) / (&total * &total)));
    let var_lin = rat_to_f64(&(a * ap / (&total * &total)));
    let var_log =
        rat_to_f64(&((ap * ap * g + a * a * gp - a * ap * (g + gp)) / (&total * &total * &total)));

    Ok((
        mean_lin * nf + mean_log * ln_n,
        var_lin * nf + var_log * ln_n,
    ))
}

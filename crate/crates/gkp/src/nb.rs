//! Exact moment sequences for the conditioned negative-binomial regime
//! (α = β = 0, β′ > 0, γ > 0).
//!
//! With u = β′/(β′+γ), v = γ/(β′+γ) and q = γ′/β′, define
//!
//! ```text
//! S_n = Σ_{k=0}^n u^k · Γ(k+1+q)/(k!·(n-k)!) · v^{n-k}.
//! ```
//!
//! Every `S_n` is the common factor `Γ(1+q)` times a rational number, because
//! `Γ(k+1+q)/(k!·Γ(1+q)) = Π_{i=1..k}(q+i)/i`. This module stores those
//! rational multiples, which is all the moment formulas need since only the
//! ratios `S_{n-1}/S_n` and `S_{n-2}/S_n` enter:
//!
//! ```text
//! E X_n   = n − v·S_{n-1}/S_n
//! var X_n = v²·S_{n-2}/S_n + v·S_{n-1}/S_n − v²·(S_{n-1}/S_n)²
//! ```

use num_traits::{One, Signed, Zero};

use crate::dist::MomentReport;
use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::regime::classify;
use crate::scalar::{rat_int, Rat};

fn require_nb_regime(params: &GkpParams) -> Result<(Rat, Rat, Rat)> {
    let ok = params.alpha.is_zero()
        && params.beta.is_zero()
        && params.beta_p.is_positive()
        && params.gamma.is_positive();
    if !ok {
        return Err(Error::WrongRegime {
            expected: "NBConditionedPoisson",
            found: classify(params).tag(),
        });
    }
    let total = &params.beta_p + &params.gamma;
    let u = &params.beta_p / &total;
    let v = &params.gamma / &total;
    let q = &params.gamma_p / &params.beta_p;
    Ok((u, v, q))
}

/// The sequence `S_0 .. S_{n_max}` scaled by `1/Γ(1+γ′/β′)`, exact.
///
/// The convolution runs over scaled integers (the common denominator of the
/// n-th sum is `n!·(ud·qd·vd)^n` for u = un/ud etc.), so only one rational
/// reduction happens per n instead of one per term.
pub fn nb_s_sequence(params: &GkpParams, n_max: usize) -> Result<Vec<Rat>> {
    use num_bigint::BigInt;
    let (u, v, q) = require_nb_regime(params)?;
    let (un, ud) = (u.numer().clone(), u.denom().clone());
    let (vn, vd) = (v.numer().clone(), v.denom().clone());
    let (qn, qd) = (q.numer().clone(), q.denom().clone());

    // A_k = (un·vd)^k · Π_{i=1..k}(qn + i·qd),  B_j = (vn·ud·qd)^j; then
    // S_n · n!·(ud·qd·vd)^n = Σ_k C(n,k)·A_k·B_{n-k}.
    let step_a = &un * &vd;
    let step_b = &vn * &ud * &qd;
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    a.push(BigInt::one());
    b.push(BigInt::one());
    for k in 1..=n_max {
        let rising = &qn + &qd * BigInt::from(k);
        a.push(&a[k - 1] * &step_a * rising);
        b.push(&b[k - 1] * &step_b);
    }

    let w = &ud * &qd * &vd;
    let mut denom = BigInt::one();
    let mut s = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            denom = denom * BigInt::from(n) * &w;
        }
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        for k in 0..=n {
            if k > 0 {
                binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
            }
            acc += &binom * &a[k] * &b[n - k];
        }
        s.push(Rat::new(acc, denom.clone()));
    }
    Ok(s)
}

/// Exact mean and variance of X_n from the S-ratios; needs `n ≥ 2`.
pub fn nb_exact_moments(params: &GkpParams, n: usize) -> Result<MomentReport<Rat>> {
    if n < 2 {
        return Err(Error::InvalidInput("moment formulas need n >= 2".into()));
    }
    let seq = nb_s_sequence(params, n)?;
    nb_moments_from_sequence(params, &seq, n)
}

/// Same as [`nb_exact_moments`] but reusing a precomputed sequence.
pub fn nb_moments_from_sequence(
    params: &GkpParams,
    seq: &[Rat],
    n: usize,
) -> Result<MomentReport<Rat>> {
    if n < 2 || seq.len() <= n {
        return Err(Error::InvalidInput(
            "moment formulas need n >= 2 and S_0..S_n".into(),
        ));
    }
    let (_, v, _) = require_nb_regime(params)?;
    let r1 = seq[n - 1].clone() / &seq[n];
    let r2 = seq[n - 2].clone() / &seq[n];
    let mean = rat_int(n as i64) - v.clone() * &r1;
    let variance = v.clone() * &v * &r2 + v.clone() * &r1 - v.clone() * &v * &r1 * &r1;
    Ok(MomentReport { mean, variance })
}

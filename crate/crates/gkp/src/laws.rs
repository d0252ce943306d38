//! Reference distributions the finite-n laws are compared against.
//!
//! Discrete laws with rational parameters evaluate exactly wherever the pmf
//! itself is rational. Negative binomial probabilities use the
//! rising-factorial form `Γ(k+r)/(k!Γ(r)) = Π_{i=1..k}(r+i-1)/i`, so the only
//! possibly irrational factor is `p^r` (rational exactly when `r` is an
//! integer); the Poisson pmf is a rational multiple of `e^{-λ}`. In the
//! conditioned negative-binomial/Poisson law both transcendental factors
//! cancel in the normalization and the pmf is exactly rational.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dist::RowDistribution;
use crate::error::{Error, Result};
use crate::scalar::{rat_int, rat_to_f64, Rat};

/// A reference law; rational parameters wherever the law has them.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitLaw {
    StdNormal,
    Binomial {
        n: usize,
        p: Rat,
    },
    Poisson {
        lambda: Rat,
    },
    NegBinomial {
        r: Rat,
        p: Rat,
    },
    ConditionedNbPoisson {
        r: Rat,
        p: Rat,
        lambda: Rat,
        n: usize,
    },
    Degenerate {
        at: usize,
    },
}

impl LimitLaw {
    pub fn validate(&self) -> Result<()> {
        let prob_open = |p: &Rat, what: &str| {
            if p.is_positive() && *p < Rat::one() {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "{what} must lie strictly between 0 and 1"
                )))
            }
        };
        match self {
            LimitLaw::StdNormal | LimitLaw::Degenerate { .. } => Ok(()),
            LimitLaw::Binomial { p, .. } => prob_open(p, "binomial p"),
            LimitLaw::Poisson { lambda } => {
                if lambda.is_negative() {
                    Err(Error::InvalidInput(
                        "poisson rate must be nonnegative".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            LimitLaw::NegBinomial { r, p } => {
                if !r.is_positive() {
                    return Err(Error::InvalidInput(
                        "negative binomial r must be positive".into(),
                    ));
                }
                prob_open(p, "negative binomial p")
            }
            LimitLaw::ConditionedNbPoisson { r, p, lambda, .. } => {
                if !r.is_positive() {
                    return Err(Error::InvalidInput("conditioned law needs r > 0".into()));
                }
                prob_open(p, "conditioned law p")?;
                if lambda.is_negative() {
                    return Err(Error::InvalidInput("conditioned law needs λ ≥ 0".into()));
                }
                Ok(())
            }
        }
    }
}

/// A probability that is either an exact rational or a float.
#[derive(Clone, Debug, PartialEq)]
pub enum PmfValue {
    Exact(Rat),
    Approx(f64),
}

impl PmfValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PmfValue::Exact(r) => rat_to_f64(r),
            PmfValue::Approx(f) => *f,
        }
    }
}

/// Rising factorial `r·(r+1)·…·(r+k-1)` divided by `k!`, i.e. the generalized
/// binomial coefficient `C(k+r-1, k)`.
fn nb_coefficient(r: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= (r + rat_int(i as i64)) / rat_int(i as i64 + 1);
    }
    acc
}

fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial_coefficient(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact Bin(n, p) probability vector.
pub fn binomial_pmf(n: usize, p: &Rat) -> Vec<Rat> {
    let q = Rat::one() - p;
    (0..=n)
        .map(|k| Rat::from_integer(binomial_coefficient(n, k)) * rat_pow(p, k) * rat_pow(&q, n - k))
        .collect()
}

/// Float Poisson pmf at `k`, built iteratively to avoid factorial overflow.
pub fn poisson_pmf_f64(lambda: f64, k: usize) -> f64 {
    let mut acc = (-lambda).exp();
    for i in 1..=k {
        acc *= lambda / i as f64;
    }
    acc
}

/// Pointwise pmf of a discrete law. Exact wherever the value is rational:
/// binomial, degenerate, the conditioned law, and negative binomial with an
/// integer `r`. StdNormal has no pmf and is a domain error.
pub fn law_pmf(law: &LimitLaw, k: usize) -> Result<PmfValue> {
    law.validate()?;
    match law {
        LimitLaw::StdNormal => Err(Error::InvalidInput(
            "the standard normal is continuous; it has no pmf".into(),
        )),
        LimitLaw::Binomial { n, p } => {
            if k > *n {
                return Ok(PmfValue::Exact(Rat::zero()));
            }
            let q = Rat::one() - p;
            Ok(PmfValue::Exact(
                Rat::from_integer(binomial_coefficient(*n, k)) * rat_pow(p, k) * rat_pow(&q, n - k),
            ))
        }
        LimitLaw::Poisson { lambda } => {
            Ok(PmfValue::Approx(poisson_pmf_f64(rat_to_f64(lambda), k)))
        }
        LimitLaw::NegBinomial { r, p } => {
            let coeff = nb_coefficient(r, k) * rat_pow(&(Rat::one() - p), k);
            if r.denom().is_one() {
                let e = r.numer().to_usize().ok_or_else(|| {
                    Error::InvalidInput("negative binomial r too large for exact power".into())
                })?;
                Ok(PmfValue::Exact(coeff * rat_pow(p, e)))
            } else {
                Ok(PmfValue::Approx(
                    rat_to_f64(&coeff) * rat_to_f64(p).powf(rat_to_f64(r)),
                ))
            }
        }
        LimitLaw::ConditionedNbPoisson { r, p, lambda, n } => {
            let dist = conditioned_nb_poisson(r, p, lambda, *n)?;
            Ok(PmfValue::Exact(dist.prob(k)))
        }
        LimitLaw::Degenerate { at } => Ok(PmfValue::Exact(if k == *at {
            Rat::one()
        } else {
            Rat::zero()
        })),
    }
}

/// The law of a NB(r, p) variable conditioned on its sum with an independent
/// Pois(λ) equaling `n`:
///
/// ```text
/// P(X = k) ∝ C(k+r-1, k)·(1-p)^k · λ^{n-k}/(n-k)!,   0 ≤ k ≤ n.
/// ```
///
/// The `p^r` and `e^{-λ}` factors cancel in the normalization, so the result
/// is exactly rational for rational inputs.
pub fn conditioned_nb_poisson(
    r: &Rat,
    p: &Rat,
    lambda: &Rat,
    n: usize,
) -> Result<RowDistribution<Rat>> {
    LimitLaw::ConditionedNbPoisson {
        r: r.clone(),
        p: p.clone(),
        lambda: lambda.clone(),
        n,
    }
    .validate()?;
    let mut weights = Vec::with_capacity(n + 1);
    let q = Rat::one() - p;
    let mut nb_part = Rat::one(); // C(k+r-1,k)(1-p)^k, updated in k
    let mut factorial = vec![Rat::one(); n + 1];
    for j in 1..=n {
        factorial[j] = factorial[j - 1].clone() * rat_int(j as i64);
    }
    for k in 0..=n {
        if k > 0 {
            nb_part = nb_part * (r + rat_int(k as i64 - 1)) / rat_int(k as i64) * &q;
        }
        let pois_part = rat_pow(lambda, n - k) / &factorial[n - k];
        weights.push(nb_part.clone() * pois_part);
    }
    RowDistribution::from_weights(n, &weights)
}

const FRAC_1_SQRT_PI: f64 = 0.5641895835477563;

/// erf on |x| ≤ 2 by its Maclaurin series; alternating with mild cancellation
/// in this range.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        let nf = n as f64;
        term *= -x2 / nf;
        let contrib = term / (2.0 * nf + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs().max(1e-3) {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * sum
}

/// erfc on x ≥ 2 by the Legendre continued fraction, evaluated with the
/// modified Lentz scheme.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..300 {
        let a = j as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() * FRAC_1_SQRT_PI / f
}

/// Standard normal cumulative distribution function.
///
/// `Φ(t) = 0.5·erfc(−t/√2)`, with erf by Maclaurin series for `|t| ≤ 2√2` and
/// erfc by continued fraction beyond; absolute error is below 1e-14 across
/// the real line.
pub fn normal_cdf(t: f64) -> f64 {
    let x = t / std::f64::consts::SQRT_2;
    if x.abs() <= 2.0 {
        0.5 + 0.5 * erf_series(x)
    } else if x > 0.0 {
        1.0 - 0.5 * erfc_continued_fraction(x)
    } else {
        0.5 * erfc_continued_fraction(-x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn negative_binomial_pmf_values() {
        let geo = LimitLaw::NegBinomial {
            r: rat_int(1),
            p: rat(1, 2),
        };
        assert_eq!(law_pmf(&geo, 2).unwrap(), PmfValue::Exact(rat(1, 8)));
        let nb2 = LimitLaw::NegBinomial {
            r: rat_int(2),
            p: rat(2, 3),
        };
        assert_eq!(law_pmf(&nb2, 1).unwrap(), PmfValue::Exact(rat(8, 27)));
        // non-integer r falls back to a float through p^r
        let nb_half = LimitLaw::NegBinomial {
            r: rat(3, 2),
            p: rat(1, 2),
        };
        let v = law_pmf(&nb_half, 0).unwrap();
        assert!(matches!(v, PmfValue::Approx(_)));
        assert!((v.to_f64() - 0.5f64.powf(1.5)).abs() < 1e-15);
    }

    #[test]
    fn binomial_pmf_values() {
        let b = LimitLaw::Binomial { n: 4, p: rat(1, 2) };
        assert_eq!(law_pmf(&b, 2).unwrap(), PmfValue::Exact(rat(3, 8)));
        assert_eq!(law_pmf(&b, 5).unwrap(), PmfValue::Exact(Rat::zero()));
        let pmf = binomial_pmf(4, &rat(1, 2));
        let total: Rat = pmf.iter().cloned().fold(Rat::zero(), |a, b| a + b);
        assert_eq!(total, Rat::one());
    }

    #[test]
    fn poisson_pmf_matches_direct_formula() {
        let lam = 1.5f64;
        for k in 0..10 {
            let direct = (-lam).exp() * lam.powi(k as i32)
                / (1..=k).map(|i| i as f64).product::<f64>().max(1.0);
            assert!((poisson_pmf_f64(lam, k) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn std_normal_has_no_pmf() {
        assert!(law_pmf(&LimitLaw::StdNormal, 0).is_err());
    }

    #[test]
    fn discrete_laws_have_unit_mass() {
        // integer-r negative binomial: exact partial sums plus a geometric
        // tail bound P(Y > K) <= (1-p)^{K+1} / p^{-r+1}-ish; the crude bound
        // (K+1+r)^r (1-p)^{K+1} suffices here
        let r = rat_int(2);
        let p = rat(2, 3);
        let law = LimitLaw::NegBinomial {
            r: r.clone(),
            p: p.clone(),
        };
        let mut mass = Rat::zero();
        let cap = 60usize;
        for k in 0..=cap {
            match law_pmf(&law, k).unwrap() {
                PmfValue::Exact(v) => mass += v,
                PmfValue::Approx(_) => panic!("integer r stays exact"),
            }
        }
        let gap = rat_to_f64(&(Rat::one() - &mass));
        assert!(gap > 0.0 && gap < 1e-25, "mass gap {gap}");

        // the conditioned law is a finite distribution: exact unit mass
        let d = conditioned_nb_poisson(&rat(3, 2), &rat(1, 4), &rat(2, 3), 25).unwrap();
        let total: Rat = d.probs().iter().cloned().fold(Rat::zero(), |a, b| a + b);
        assert_eq!(total, Rat::one());

        // Poisson mass to a generous cap
        let s: f64 = (0..200).map(|k| poisson_pmf_f64(3.0, k)).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn conditioned_law_small_cases() {
        // r = 1: the two weights are equal
        let d = conditioned_nb_poisson(&rat_int(1), &rat(1, 2), &rat(1, 2), 1).unwrap();
        assert_eq!(d.probs(), &[rat(1, 2), rat(1, 2)]);
        // r = 2: weights (1/2)·λ : 2·(1-p) ⇒ 1 : 2
        let d2 = conditioned_nb_poisson(&rat_int(2), &rat(1, 2), &rat(1, 2), 1).unwrap();
        assert_eq!(d2.probs(), &[rat(1, 3), rat(2, 3)]);
        // n = 0 is the point mass
        let d0 = conditioned_nb_poisson(&rat_int(2), &rat(1, 2), &rat(1, 2), 0).unwrap();
        assert_eq!(d0.probs(), &[rat_int(1)]);
    }

    #[test]
    fn conditioned_law_equals_joint_truncation() {
        // brute-force oracle: truncate the NB x Poisson product lattice and
        // condition on the anti-diagonal
        let r = rat(5, 2);
        let p = rat(1, 3);
        let lam = rat(3, 4);
        for n in 0..=30 {
            let direct = conditioned_nb_poisson(&r, &p, &lam, n).unwrap();
            let mut joint = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let nb_w = nb_coefficient(&r, k) * rat_pow(&(Rat::one() - &p), k);
                let j = n - k;
                let mut fact = Rat::one();
                for i in 1..=j {
                    fact *= rat_int(i as i64);
                }
                let pois_w = rat_pow(&lam, j) / fact;
                joint.push(nb_w * pois_w);
            }
            let oracle = RowDistribution::from_weights(n, &joint).unwrap();
            assert_eq!(direct, oracle, "n = {n}");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(conditioned_nb_poisson(&rat_int(0), &rat(1, 2), &rat(1, 2), 3).is_err());
        assert!(conditioned_nb_poisson(&rat_int(1), &rat_int(1), &rat(1, 2), 3).is_err());
        assert!(conditioned_nb_poisson(&rat_int(1), &rat(1, 2), &rat(-1, 2), 3).is_err());
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.959964) - 0.975).abs() < 1e-6);
        assert!((normal_cdf(1.0) - 0.8413447460685429).abs() < 1e-14);
        assert!((normal_cdf(-1.0) - 0.15865525393145707).abs() < 1e-14);
        // branch boundary consistency: series vs continued fraction
        for t in [2.8284, 2.8285, -2.8284, -2.8285, 3.5, -3.5] {
            let lo = normal_cdf(t - 1e-9);
            let hi = normal_cdf(t + 1e-9);
            assert!((hi - lo).abs() < 1e-9);
        }
        assert!(normal_cdf(40.0) == 1.0);
        assert!(normal_cdf(-40.0) == 0.0);
    }

    #[test]
    fn normal_cdf_symmetry() {
        for i in 0..200 {
            let t = -10.0 + i as f64 * 0.1;
            assert!(
                (normal_cdf(t) + normal_cdf(-t) - 1.0).abs() < 1e-14,
                "t = {t}"
            );
        }
    }

    #[test]
    fn normal_cdf_against_quadrature() {
        // Simpson's rule on the density from -12 to t, fine enough for 1e-12
        let phi = |u: f64| (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt();
        for &t in &[-3.0, -1.5, -0.3, 0.0, 0.7, 1.959964, 2.5, 4.0] {
            let a = -12.0;
            let steps = 48_000;
            let h = (t - a) / steps as f64;
            let mut acc = phi(a) + phi(t);
            for i in 1..steps {
                let u = a + i as f64 * h;
                acc += phi(u) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let integral = acc * h / 3.0;
            assert!((normal_cdf(t) - integral).abs() < 1e-12, "t = {t}");
        }
    }
}

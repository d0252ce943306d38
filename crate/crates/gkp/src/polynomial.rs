//! Dense univariate polynomials and the generating-polynomial recurrence.
//!
//! [`GenPolynomial`] keeps its coefficient vector row-aligned: the polynomial
//! for row `n` always stores exactly `n + 1` coefficients, trailing zeros
//! included, so it can be compared entrywise with a triangle row.

use crate::params::GkpParams;
use crate::scalar::Scalar;

/// Dense polynomial; `coeffs[k]` is the coefficient of `x^k`. The vector is
/// never trimmed implicitly, so its length is part of the value.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::len_without_is_empty)] // coefficient vectors are nonempty by construction
pub struct GenPolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> GenPolynomial<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// The constant polynomial 1, the seed P_0 of every recurrence.
    pub fn one() -> Self {
        Self {
            coeffs: vec![S::one()],
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Number of stored coefficients (row alignment: always `n + 1` for row n).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Degree after ignoring trailing zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self {
                coeffs: vec![S::zero()],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_usize(k) * c)
            .collect();
        Self { coeffs }
    }

    /// Evaluation of the derivative without materializing it.
    pub fn eval_derivative(&self, x: &S) -> S {
        self.derivative().eval(x)
    }

    fn add_scaled_shifted(acc: &mut Vec<S>, p: &[S], scale: &S, shift: usize) {
        if scale.is_zero() {
            return;
        }
        if acc.len() < p.len() + shift {
            acc.resize(p.len() + shift, S::zero());
        }
        for (i, c) in p.iter().enumerate() {
            let term = c.clone() * scale;
            acc[i + shift] = acc[i + shift].clone() + term;
        }
    }
}

/// One step of the generating-polynomial recurrence,
///
/// ```text
/// P_n(x) = ((α′x + α)n + (β′ + γ′)x + γ)·P_{n-1}(x) + x(β + β′x)·P′_{n-1}(x)
/// ```
///
/// with `n` inferred from the row alignment of `prev` (`prev` holds row
/// `n - 1`, hence `n` coefficients). The result is padded to exactly `n + 1`
/// coefficients. This route is deliberately built out of polynomial
/// operations rather than the entrywise triangle recurrence, so the two can
/// be checked against each other.
pub fn polynomial_step<S: Scalar>(params: &GkpParams, prev: &GenPolynomial<S>) -> GenPolynomial<S> {
    let n = prev.len();
    let n_s = S::from_usize(n);

    // multiplier polynomial a_1·x + a_0
    let a0 = S::from_rat(&params.alpha) * &n_s + S::from_rat(&params.gamma);
    let a1 = S::from_rat(&params.alpha_p) * &n_s
        + S::from_rat(&params.beta_p)
        + S::from_rat(&params.gamma_p);

    // derivative multiplier b_1·x + b_2·x²
    let b1 = S::from_rat(&params.beta);
    let b2 = S::from_rat(&params.beta_p);

    let deriv = prev.derivative();
    let mut out = vec![S::zero(); n + 1];
    GenPolynomial::add_scaled_shifted(&mut out, prev.coeffs(), &a0, 0);
    GenPolynomial::add_scaled_shifted(&mut out, prev.coeffs(), &a1, 1);
    GenPolynomial::add_scaled_shifted(&mut out, deriv.coeffs(), &b1, 1);
    GenPolynomial::add_scaled_shifted(&mut out, deriv.coeffs(), &b2, 2);
    out.truncate(n + 1);
    out.resize(n + 1, S::zero());
    GenPolynomial::new(out)
}

/// Iterates [`polynomial_step`] from P_0 = 1 up to row `n_max`, returning all
/// rows.
pub fn polynomial_rows<S: Scalar>(params: &GkpParams, n_max: usize) -> Vec<GenPolynomial<S>> {
    let mut rows = Vec::with_capacity(n_max + 1);
    rows.push(GenPolynomial::one());
    for _ in 0..n_max {
        let next = polynomial_step(params, rows.last().unwrap());
        rows.push(next);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn pascal_step() {
        let params = GkpParams::from_ints(0, 0, 1, 0, 0, 1);
        let p1 = GenPolynomial::new(rats(&[1, 1]));
        let p2 = polynomial_step(&params, &p1);
        assert_eq!(p2.coeffs(), rats(&[1, 2, 1]).as_slice());
    }

    #[test]
    fn stirling_step() {
        let params = GkpParams::from_ints(0, 1, 0, 0, 0, 1);
        let p2 = GenPolynomial::new(rats(&[0, 1, 1]));
        let p3 = polynomial_step(&params, &p2);
        assert_eq!(p3.coeffs(), rats(&[0, 1, 3, 1]).as_slice());
    }

    #[test]
    fn first_step_from_constant_seed() {
        // P_1 = (α+γ) + (α′+β′+γ′)x for any parameters
        let params = GkpParams::from_ints(2, 5, 3, 7, 11, 13);
        let p1 = polynomial_step(&params, &GenPolynomial::<Rat>::one());
        assert_eq!(p1.coeffs(), rats(&[5, 31]).as_slice());
    }

    #[test]
    fn degree_and_eval() {
        let p = GenPolynomial::new(rats(&[1, 11, 11, 1, 0]));
        assert_eq!(p.len(), 5);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.eval(&rat_int(1)), rat_int(24));
        assert_eq!(p.eval_derivative(&rat_int(0)), rat_int(11));
        let z = GenPolynomial::new(rats(&[0, 0]));
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }
}

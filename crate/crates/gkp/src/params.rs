//! The six-parameter point driving a triangle recurrence.

use num_traits::{Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rat_int, Rat};

/// Parameters (α, β, γ, α′, β′, γ′) of the recurrence
///
/// ```text
/// |n k| = (αn + βk + γ)|n-1 k| + (α′n + β′k + γ′)|n-1 k-1| + [n = k = 0]
/// ```
///
/// with `|n k| = 0` outside `0 ≤ k ≤ n`. The triangle is defined for any
/// rational parameters; the limit-law machinery only accepts the families
/// covered by [`GkpParams::classifiable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkpParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub alpha_p: Rat,
    pub beta_p: Rat,
    pub gamma_p: Rat,
}

impl GkpParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, alpha_p: Rat, beta_p: Rat, gamma_p: Rat) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            alpha_p,
            beta_p,
            gamma_p,
        }
    }

    /// Integer-valued convenience constructor, in the order (α, β, γ, α′, β′, γ′).
    pub fn from_ints(a: i64, b: i64, g: i64, ap: i64, bp: i64, gp: i64) -> Self {
        Self::new(
            rat_int(a),
            rat_int(b),
            rat_int(g),
            rat_int(ap),
            rat_int(bp),
            rat_int(gp),
        )
    }

    /// Parses `"a,b,g,ap,bp,gp"` where each entry is `num/den` or an integer.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(Error::InvalidInput(format!(
                "expected six comma-separated rationals (alpha,beta,gamma,alpha',beta',gamma'), got {}",
                parts.len()
            )));
        }
        let mut vals = parts.iter().map(|p| parse_rational(p));
        Ok(Self::new(
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
        ))
    }

    pub fn as_array(&self) -> [&Rat; 6] {
        [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.alpha_p,
            &self.beta_p,
            &self.gamma_p,
        ]
    }

    /// True on the parameter families whose row random variables the crate
    /// can classify:
    ///
    /// * α′ = 0 with the other five parameters nonnegative,
    /// * α = β = 0 with α′ ≥ 0, β′ > 0, γ ≥ 0, γ′ ≥ 0,
    /// * β = β′ = 0 with α, α′, γ, γ′ all nonnegative.
    pub fn classifiable(&self) -> bool {
        let nonneg = |r: &Rat| !r.is_negative();
        let a = &self.alpha;
        let b = &self.beta;
        let g = &self.gamma;
        let ap = &self.alpha_p;
        let bp = &self.beta_p;
        let gp = &self.gamma_p;

        (ap.is_zero() && [a, b, g, bp, gp].into_iter().all(nonneg))
            || (a.is_zero()
                && b.is_zero()
                && nonneg(ap)
                && bp.is_positive()
                && nonneg(g)
                && nonneg(gp))
            || (b.is_zero() && bp.is_zero() && [a, ap, g, gp].into_iter().all(nonneg))
    }

    /// All six parameters nonnegative; guarantees every triangle entry is ≥ 0.
    pub fn all_nonnegative(&self) -> bool {
        self.as_array().into_iter().all(|r| !r.is_negative())
    }
}

impl fmt::Display for GkpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.as_array().into_iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

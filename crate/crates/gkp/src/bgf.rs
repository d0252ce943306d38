//! Closed-form bivariate generating functions and their machine checks.
//!
//! For every classifiable parameter point the exponential generating function
//! `F(z,x) = Σ_n P_n(x) z^n/n!` has a closed form. The forms below were
//! re-derived against the defining equation
//!
//! ```text
//! (1 − αz − α′xz)·F_z − x(β + β′x)·F_x = ((α′+β′+γ′)x + α + γ)·F,   F(0,x) = 1
//! ```
//!
//! which fixes the pole exponent of the `(1−αz)` numerator factor at
//! `-(α+γ)/α` and, in the perturbed-pole family, the denominator exponent at
//! `(α′+β′+γ′)/(α′+β′)`.
//!
//! Every limit form (α→0, β→0, β′→0) is a separately stored formula chosen by
//! the zero-pattern of the parameters; no limit is ever taken numerically.
//! Coefficient extraction is univariate: `F(z,x)` is expanded in `z` at fixed
//! rational `x`, exactly.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::scalar::{rat_int, Rat};
use crate::series::{binomial_series, exp_series, Series};
use crate::triangle::{build_triangle, TriangleTable};

/// Which closed form applies, with the exact rational constants of that form.
#[derive(Clone, Debug, PartialEq)]
pub enum BgfForm {
    /// α>0, β>0, β′>0:
    /// `F = (1−αz)^{pole_exponent} · C^{−κ}`,
    /// `C = 1 + (β′x/β)(1 − (1−αz)^{power_ratio})`.
    AlgebraicPole {
        kappa: Rat,
        pole_exponent: Rat,
        power_ratio: Rat,
    },
    /// α>0, β=0, β′>0 (β→0 limit of the above):
    /// `C = 1 + (β′x/α)·ln(1−αz)`.
    AlgebraicPoleLog { kappa: Rat, pole_exponent: Rat },
    /// α=0, β>0, β′>0:
    /// `F = e^{γz} · (1 + (β′x/β)(1 − e^{βz}))^{−κ}`.
    ExpPole { kappa: Rat },
    /// α=β=0, β′>0:
    /// `F = e^{γz} · (1 − β′xz)^{−κ}`.
    PurePole { kappa: Rat },
    /// β′=0, α>0, β>0:
    /// `F = (1−αz)^{pole_exponent} · exp((γ′x/β)((1−αz)^{power_ratio} − 1))`.
    StretchedExp {
        pole_exponent: Rat,
        power_ratio: Rat,
    },
    /// β′=0, α=0, β>0:
    /// `F = exp(γz + (γ′x/β)(e^{βz} − 1))`.
    ExpExp,
    /// β=β′=0 (α, α′ ≥ 0):
    /// `F = (1 − (α′x+α)z)^{−1−(γ′x+γ)/(α′x+α)}`, and `e^{(γ′x+γ)z}` where
    /// the base vanishes.
    RisingFactorial,
    /// α=β=0, α′>0, β′>0:
    /// `F = exp((γ/(β′x))(1 − (1−(α′+β′)xz)^{power_ratio})) · (1−(α′+β′)xz)^{pole_exponent}`.
    PerturbedPole {
        pole_exponent: Rat,
        power_ratio: Rat,
    },
}

impl BgfForm {
    pub fn name(&self) -> &'static str {
        match self {
            BgfForm::AlgebraicPole { .. } => "algebraic-pole",
            BgfForm::AlgebraicPoleLog { .. } => "algebraic-pole-log",
            BgfForm::ExpPole { .. } => "exp-pole",
            BgfForm::PurePole { .. } => "pure-pole",
            BgfForm::StretchedExp { .. } => "stretched-exp",
            BgfForm::ExpExp => "exp-exp",
            BgfForm::RisingFactorial => "rising-factorial",
            BgfForm::PerturbedPole { .. } => "perturbed-pole",
        }
    }
}

/// A classifiable parameter point together with its closed form.
#[derive(Clone, Debug)]
pub struct ClosedFormBgf {
    params: GkpParams,
    form: BgfForm,
}

impl ClosedFormBgf {
    pub fn params(&self) -> &GkpParams {
        &self.params
    }

    pub fn form(&self) -> &BgfForm {
        &self.form
    }

    /// `κ = 1 + γ′/β′` for the β′ > 0 families.
    pub fn kappa(&self) -> Option<&Rat> {
        match &self.form {
            BgfForm::AlgebraicPole { kappa, .. }
            | BgfForm::AlgebraicPoleLog { kappa, .. }
            | BgfForm::ExpPole { kappa }
            | BgfForm::PurePole { kappa } => Some(kappa),
            _ => None,
        }
    }
}

/// Selects the closed form by the zero-pattern of the parameters.
pub fn closed_form(params: &GkpParams) -> Result<ClosedFormBgf> {
    if !params.classifiable() {
        return Err(Error::Unclassifiable);
    }
    let a = &params.alpha;
    let b = &params.beta;
    let g = &params.gamma;
    let ap = &params.alpha_p;
    let bp = &params.beta_p;
    let gp = &params.gamma_p;

    let form = if ap.is_zero() {
        if bp.is_positive() {
            let kappa = Rat::one() + gp / bp;
            if a.is_positive() && b.is_positive() {
                BgfForm::AlgebraicPole {
                    kappa,
                    pole_exponent: -(a + g) / a,
                    power_ratio: -b / a,
                }
            } else if a.is_zero() && b.is_positive() {
                BgfForm::ExpPole { kappa }
            } else if a.is_positive() {
                BgfForm::AlgebraicPoleLog {
                    kappa,
                    pole_exponent: -(a + g) / a,
                }
            } else {
                BgfForm::PurePole { kappa }
            }
        } else if b.is_positive() && a.is_positive() {
            BgfForm::StretchedExp {
                pole_exponent: -(a + g) / a,
                power_ratio: -b / a,
            }
        } else if b.is_positive() {
            BgfForm::ExpExp
        } else {
            BgfForm::RisingFactorial
        }
    } else if a.is_zero() && b.is_zero() && bp.is_positive() {
        let s = ap + bp;
        BgfForm::PerturbedPole {
            pole_exponent: -(ap + bp + gp) / &s,
            power_ratio: bp / &s,
        }
    } else {
        BgfForm::RisingFactorial
    };

    Ok(ClosedFormBgf {
        params: params.clone(),
        form,
    })
}

/// Coefficients `a_n = n! · [z^n] F(z, x)` of a univariate slice of the
/// generating function, exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesAtX {
    pub x: Rat,
    pub coeffs: Vec<Rat>,
}

fn expand(form: &ClosedFormBgf, x: &Rat, order: usize) -> Result<Series<Rat>> {
    let p = &form.params;
    let one = Rat::one();
    let f = match &form.form {
        BgfForm::AlgebraicPole {
            kappa,
            pole_exponent,
            power_ratio,
        } => {
            let v = binomial_series::<Rat>(power_ratio, &(-&p.alpha), order);
            let scale = &p.beta_p * x / &p.beta;
            let c = Series::constant(one, order)
                .sub(&v)
                .scale(&scale)
                .add_constant(&Rat::one());
            let b = binomial_series::<Rat>(pole_exponent, &(-&p.alpha), order);
            b.mul(&c.pow_rat(&-kappa)?)
        }
        BgfForm::AlgebraicPoleLog {
            kappa,
            pole_exponent,
        } => {
            let base = Series::from_coeffs(vec![Rat::one(), -&p.alpha]).truncated(order);
            let log = base.ln()?;
            let scale = &p.beta_p * x / &p.alpha;
            let c = log.scale(&scale).add_constant(&Rat::one());
            let b = binomial_series::<Rat>(pole_exponent, &(-&p.alpha), order);
            b.mul(&c.pow_rat(&-kappa)?)
        }
        BgfForm::ExpPole { kappa } => {
            let v = exp_series::<Rat>(&p.beta, order);
            let scale = &p.beta_p * x / &p.beta;
            let c = Series::constant(one, order)
                .sub(&v)
                .scale(&scale)
                .add_constant(&Rat::one());
            exp_series::<Rat>(&p.gamma, order).mul(&c.pow_rat(&-kappa)?)
        }
        BgfForm::PurePole { kappa } => {
            let pole = binomial_series::<Rat>(&-kappa, &(-(&p.beta_p * x)), order);
            exp_series::<Rat>(&p.gamma, order).mul(&pole)
        }
        BgfForm::StretchedExp {
            pole_exponent,
            power_ratio,
        } => {
            let v = binomial_series::<Rat>(power_ratio, &(-&p.alpha), order);
            let scale = &p.gamma_p * x / &p.beta;
            let w = v.sub(&Series::constant(Rat::one(), order)).scale(&scale);
            binomial_series::<Rat>(pole_exponent, &(-&p.alpha), order).mul(&w.exp()?)
        }
        BgfForm::ExpExp => {
            let scale = &p.gamma_p * x / &p.beta;
            let mut w = exp_series::<Rat>(&p.beta, order)
                .sub(&Series::constant(Rat::one(), order))
                .scale(&scale);
            if order >= 2 {
                w = w.add(&Series::linear(p.gamma.clone(), order));
            }
            w.exp()?
        }
        BgfForm::RisingFactorial => {
            let base = &p.alpha_p * x + &p.alpha;
            let shift = &p.gamma_p * x + &p.gamma;
            if base.is_zero() {
                exp_series::<Rat>(&shift, order)
            } else {
                let exponent = -(Rat::one() + &shift / &base);
                binomial_series::<Rat>(&exponent, &(-&base), order)
            }
        }
        BgfForm::PerturbedPole {
            pole_exponent,
            power_ratio,
        } => {
            if x.is_zero() {
                return Err(Error::InvalidInput(
                    "perturbed-pole form needs a nonzero sample point".into(),
                ));
            }
            let s = (&p.alpha_p + &p.beta_p) * x;
            let w = binomial_series::<Rat>(power_ratio, &(-&s), order);
            let scale = &p.gamma / (&p.beta_p * x);
            let u = Series::constant(Rat::one(), order).sub(&w).scale(&scale);
            u.exp()?
                .mul(&binomial_series::<Rat>(pole_exponent, &(-&s), order))
        }
    };
    Ok(f)
}

/// Expands `F(z, x)` to order `n_max` and rescales to `a_n = n!·[z^n]F`.
pub fn series_coefficients(form: &ClosedFormBgf, x: &Rat, n_max: usize) -> Result<SeriesAtX> {
    let f = expand(form, x, n_max + 1)?;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut factorial = Rat::one();
    for n in 0..=n_max {
        if n > 0 {
            factorial *= rat_int(n as i64);
        }
        coeffs.push(f.coeff(n) * &factorial);
    }
    debug_assert!(coeffs[0].is_one(), "F(0,x) = 1 for every closed form");
    Ok(SeriesAtX {
        x: x.clone(),
        coeffs,
    })
}

/// Outcome of an exact comparison; `max_abs` is zero when the check passes.
#[derive(Clone, Debug)]
pub struct DiscrepancyReport {
    pub n_max: usize,
    pub xs: Vec<Rat>,
    pub max_abs: Rat,
}

impl DiscrepancyReport {
    pub fn is_exact_zero(&self) -> bool {
        self.max_abs.is_zero()
    }
}

/// Compares `n!·[z^n]F(z,x)` from the closed form against `P_n(x)` from the
/// triangle, exactly, for each sample point.
pub fn consistency_check(
    params: &GkpParams,
    n_max: usize,
    xs: &[Rat],
) -> Result<DiscrepancyReport> {
    let cf = closed_form(params)?;
    let table = build_triangle::<Rat>(params, n_max)?;
    let mut max_abs = Rat::zero();
    for x in xs {
        let series = series_coefficients(&cf, x, n_max)?;
        for n in 0..=n_max {
            let direct = table.row_polynomial(n)?.eval(x);
            let diff = (series.coeffs[n].clone() - direct).abs();
            if diff > max_abs {
                max_abs = diff;
            }
        }
    }
    Ok(DiscrepancyReport {
        n_max,
        xs: xs.to_vec(),
        max_abs,
    })
}

/// Applies the defining differential operator to the triangle-built truncated
/// series and reports the largest coefficient of the residual
///
/// ```text
/// (1 − αz − α′xz)·F_z − x(β + β′x)·F_x − ((α′+β′+γ′)x + α + γ)·F
/// ```
///
/// over `z^m`, `m ≤ n_max − 1`. This holds for arbitrary rational parameters,
/// classifiable or not, so no classifiability is required.
pub fn pde_residual(params: &GkpParams, n_max: usize, xs: &[Rat]) -> Result<DiscrepancyReport> {
    if n_max < 1 {
        return Err(Error::InvalidInput(
            "differential check needs n_max >= 1".into(),
        ));
    }
    let table: TriangleTable<Rat> = build_triangle(params, n_max)?;
    let mut max_abs = Rat::zero();
    for x in xs {
        let mut f_coeffs = Vec::with_capacity(n_max + 1);
        let mut fx_coeffs = Vec::with_capacity(n_max + 1);
        let mut factorial = Rat::one();
        for n in 0..=n_max {
            if n > 0 {
                factorial *= rat_int(n as i64);
            }
            let poly = table.row_polynomial(n)?;
            f_coeffs.push(poly.eval(x) / &factorial);
            fx_coeffs.push(poly.eval_derivative(x) / &factorial);
        }
        let f = Series::from_coeffs(f_coeffs);
        let f_x = Series::from_coeffs(fx_coeffs);
        let f_z = f.derivative();

        let drift = &params.alpha + &params.alpha_p * x;
        let transport = x * (&params.beta + &params.beta_p * x);
        let source = (&params.alpha_p + &params.beta_p + &params.gamma_p) * x
            + &params.alpha
            + &params.gamma;

        let residual = f_z
            .sub(&f_z.mul_z().scale(&drift))
            .sub(&f_x.scale(&transport))
            .sub(&f.scale(&source));
        for m in 0..residual.order() {
            let a = residual.coeff(m).abs();
            if a > max_abs {
                max_abs = a;
            }
        }
    }
    Ok(DiscrepancyReport {
        n_max,
        xs: xs.to_vec(),
        max_abs,
    })
}

//! Command-line surface for the triangle and limit-law library.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on computation errors (the
//! error name goes to stderr).

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gkp::dist::{exact_moments, pmf_at};
use gkp::regime::{classify, Regime};
use gkp::saddle::saddle_solve_with_tolerance;
use gkp::scalar::{format_rational, parse_rational, rat_to_f64, Rat};
use gkp::triangle::{build_triangle, TriangleTable};
use gkp::verify::{convergence_report, BackendChoice};
use gkp::{
    asymptotic_law, closed_form, consistency_check, pde_residual, quasi_power_moments,
    singularity_data, GkpParams, SaddleContext, Scalar,
};

use output::*;

#[derive(Parser)]
#[command(
    name = "gkp",
    version,
    about = "Six-parameter triangle recurrences, row distributions, and their limit laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the document to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamsArg {
    /// Six rationals "a,b,g,ap,bp,gp" in the order alpha,beta,gamma,alpha',beta',gamma'.
    #[arg(long)]
    params: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print triangle rows 0..=n.
    Triangle {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the row distribution of X_n.
    Pmf {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print mean and variance of X_n.
    Moments {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify the parameter point and print its limit-law constants.
    Classify {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the closed-form generating function against the triangle, exactly.
    #[command(name = "bgf-check")]
    BgfCheck {
        #[command(flatten)]
        params: ParamsArg,
        /// Highest order checked.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Sample points x (rationals); repeatable. Default: 1/3, 1/2, 1, 2.
        #[arg(long = "x")]
        xs: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the defining differential equation on the triangle-built series.
    #[command(name = "pde-check")]
    PdeCheck {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long = "x")]
        xs: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve the saddle-point equation and print the quasi-power predictions.
    Saddle {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        n: usize,
        /// Sample point x in [1/2, 2].
        #[arg(long, default_value = "1")]
        x: String,
        /// Relative residual tolerance for the solver.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence report on an explicit n-grid.
    Verify {
        #[command(flatten)]
        params: ParamsArg,
        /// Strictly increasing comma-separated n values, e.g. 100,400,1600.
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence report on a regime-appropriate default grid.
    Report {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum CliError {
    Usage(String),
    Compute(gkp::Error),
}

impl From<gkp::Error> for CliError {
    fn from(e: gkp::Error) -> Self {
        CliError::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

fn parse_params(s: &str) -> Result<GkpParams, CliError> {
    GkpParams::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_grid(s: &str) -> Result<Vec<usize>, CliError> {
    let grid: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let grid =
        grid.map_err(|_| CliError::Usage(format!("`{s}` is not a comma-separated n-grid")))?;
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "grid must be nonempty and strictly increasing".into(),
        ));
    }
    Ok(grid)
}

fn parse_xs(xs: &[String]) -> Result<Vec<Rat>, CliError> {
    if xs.is_empty() {
        return Ok(vec![
            parse_rational("1/3").unwrap(),
            parse_rational("1/2").unwrap(),
            parse_rational("1").unwrap(),
            parse_rational("2").unwrap(),
        ]);
    }
    xs.iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn emit(output: &OutputArgs, json: String, csv: String) -> Result<(), CliError> {
    let body = match output.format {
        FormatArg::Json => json,
        FormatArg::Csv => csv,
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Triangle {
            params,
            n,
            backend,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let doc = match backend {
                BackendArg::Exact => {
                    let table = build_triangle::<Rat>(&params, n)?;
                    triangle_doc_exact(&table)
                }
                BackendArg::Float => {
                    let table = build_triangle::<f64>(&params, n)?;
                    triangle_doc_float(&table)
                }
            };
            emit(&output, to_json(&doc), triangle_csv(&doc))
        }
        Command::Pmf {
            params,
            n,
            backend,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let doc = match backend {
                BackendArg::Exact => {
                    let table = build_triangle::<Rat>(&params, n)?;
                    let dist = pmf_at(&table, n)?;
                    PmfDoc {
                        schema_version: SCHEMA_VERSION.into(),
                        tool_version: tool_version().into(),
                        command: "pmf".into(),
                        params: ParamsDoc::from_params(&params),
                        backend: Rat::BACKEND_NAME.into(),
                        n,
                        probabilities: Some(dist.probs().iter().map(format_rational).collect()),
                        probabilities_f64: dist.probs_f64(),
                    }
                }
                BackendArg::Float => {
                    let table = build_triangle::<f64>(&params, n)?;
                    let dist = pmf_at(&table, n)?;
                    PmfDoc {
                        schema_version: SCHEMA_VERSION.into(),
                        tool_version: tool_version().into(),
                        command: "pmf".into(),
                        params: ParamsDoc::from_params(&params),
                        backend: f64::BACKEND_NAME.into(),
                        n,
                        probabilities: None,
                        probabilities_f64: dist.probs_f64(),
                    }
                }
            };
            emit(&output, to_json(&doc), pmf_csv(&doc))
        }
        Command::Moments {
            params,
            n,
            backend,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let doc = match backend {
                BackendArg::Exact => {
                    let table = build_triangle::<Rat>(&params, n)?;
                    let m = exact_moments(&pmf_at(&table, n)?);
                    MomentsDoc {
                        schema_version: SCHEMA_VERSION.into(),
                        tool_version: tool_version().into(),
                        command: "moments".into(),
                        params: ParamsDoc::from_params(&params),
                        backend: Rat::BACKEND_NAME.into(),
                        n,
                        mean: Some(format_rational(&m.mean)),
                        mean_f64: m.mean_f64(),
                        variance: Some(format_rational(&m.variance)),
                        variance_f64: m.variance_f64(),
                    }
                }
                BackendArg::Float => {
                    let table = build_triangle::<f64>(&params, n)?;
                    let m = exact_moments(&pmf_at(&table, n)?);
                    MomentsDoc {
                        schema_version: SCHEMA_VERSION.into(),
                        tool_version: tool_version().into(),
                        command: "moments".into(),
                        params: ParamsDoc::from_params(&params),
                        backend: f64::BACKEND_NAME.into(),
                        n,
                        mean: None,
                        mean_f64: m.mean_f64(),
                        variance: None,
                        variance_f64: m.variance_f64(),
                    }
                }
            };
            emit(&output, to_json(&doc), moments_csv(&doc))
        }
        Command::Classify { params, output } => {
            let params = parse_params(&params.params)?;
            let doc = classify_doc(&params)?;
            emit(&output, to_json(&doc), classify_csv(&doc))
        }
        Command::BgfCheck {
            params,
            n,
            xs,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let xs = parse_xs(&xs)?;
            let variant = closed_form(&params)?.form().name().to_string();
            let report = consistency_check(&params, n, &xs)?;
            let doc = CheckDoc {
                schema_version: SCHEMA_VERSION.into(),
                tool_version: tool_version().into(),
                command: "bgf-check".into(),
                params: ParamsDoc::from_params(&params),
                n_max: n,
                xs: xs.iter().map(format_rational).collect(),
                variant: Some(variant),
                max_abs: format_rational(&report.max_abs),
                max_abs_f64: rat_to_f64(&report.max_abs),
                exact_zero: report.is_exact_zero(),
            };
            emit(&output, to_json(&doc), check_csv(&doc))
        }
        Command::PdeCheck {
            params,
            n,
            xs,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let xs = parse_xs(&xs)?;
            let report = pde_residual(&params, n, &xs)?;
            let doc = CheckDoc {
                schema_version: SCHEMA_VERSION.into(),
                tool_version: tool_version().into(),
                command: "pde-check".into(),
                params: ParamsDoc::from_params(&params),
                n_max: n,
                xs: xs.iter().map(format_rational).collect(),
                variant: None,
                max_abs: format_rational(&report.max_abs),
                max_abs_f64: rat_to_f64(&report.max_abs),
                exact_zero: report.is_exact_zero(),
            };
            emit(&output, to_json(&doc), check_csv(&doc))
        }
        Command::Saddle {
            params,
            n,
            x,
            tol,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let x_rat = parse_rational(&x).map_err(|e| CliError::Usage(e.to_string()))?;
            let r = saddle_solve_with_tolerance(&params, &x_rat, n, tol)?;
            let ctx = SaddleContext::with_tolerance(&params, tol)?;
            let xf = rat_to_f64(&x_rat);
            let residual = (ctx.saddle_equation(r, xf) - n as f64).abs() / n as f64;
            let q = quasi_power_moments(&params, n)?;
            let doc = SaddleDoc {
                schema_version: SCHEMA_VERSION.into(),
                tool_version: tool_version().into(),
                command: "saddle".into(),
                params: ParamsDoc::from_params(&params),
                x: format_rational(&x_rat),
                n,
                r,
                residual_rel: residual,
                h1: q.h1,
                h2: q.h2,
                predicted_mean: q.predicted_mean(),
                predicted_variance: q.predicted_variance(),
            };
            emit(&output, to_json(&doc), saddle_csv(&doc))
        }
        Command::Verify {
            params,
            grid,
            backend,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let grid = parse_grid(&grid)?;
            run_report("verify", &params, &grid, backend, &output)
        }
        Command::Report {
            params,
            grid,
            backend,
            output,
        } => {
            let params = parse_params(&params.params)?;
            let grid = match grid {
                Some(g) => parse_grid(&g)?,
                None => default_grid(&classify(&params)),
            };
            run_report("report", &params, &grid, backend, &output)
        }
    }
}

fn run_report(
    command: &str,
    params: &GkpParams,
    grid: &[usize],
    backend: Option<BackendArg>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let choice = match backend {
        None => BackendChoice::Auto,
        Some(BackendArg::Exact) => BackendChoice::Exact,
        Some(BackendArg::Float) => BackendChoice::Float,
    };
    let report = convergence_report(params, grid, choice)?;
    let doc = ReportDoc::from_report(command, &report);
    emit(output, to_json(&doc), report_csv(&doc))
}

fn default_grid(regime: &Regime) -> Vec<usize> {
    match regime {
        Regime::GaussianLinear(_) => vec![100, 400, 1600],
        Regime::GaussianLogN { .. } => vec![400, 1600, 6400],
        Regime::GaussianNOverLogN => vec![500, 1000, 2000],
        Regime::GaussianStretchedPower => vec![500, 2000, 4000],
        Regime::PoissonComplement { .. } => vec![100, 400],
        _ => vec![10, 20, 50],
    }
}

fn triangle_doc_exact(table: &TriangleTable<Rat>) -> TriangleDoc {
    let rows = (0..=table.n_max())
        .map(|n| TriangleRowDoc {
            n,
            entries: Some(table.row(n).unwrap().iter().map(format_rational).collect()),
            mantissas: None,
            log2_scale: None,
        })
        .collect();
    TriangleDoc {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: tool_version().into(),
        command: "triangle".into(),
        params: ParamsDoc::from_params(table.params()),
        backend: Rat::BACKEND_NAME.into(),
        n_max: table.n_max(),
        rows,
    }
}

fn triangle_doc_float(table: &TriangleTable<f64>) -> TriangleDoc {
    let rows = (0..=table.n_max())
        .map(|n| TriangleRowDoc {
            n,
            entries: None,
            mantissas: Some(table.row(n).unwrap().to_vec()),
            log2_scale: Some(table.log2_scale(n).unwrap()),
        })
        .collect();
    TriangleDoc {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: tool_version().into(),
        command: "triangle".into(),
        params: ParamsDoc::from_params(table.params()),
        backend: f64::BACKEND_NAME.into(),
        n_max: table.n_max(),
        rows,
    }
}

fn classify_doc(params: &GkpParams) -> Result<ClassifyDoc, CliError> {
    let regime = classify(params);
    let mut constants = ClassifyConstantsDoc::empty();
    let (center_desc, scale_desc, limit) = if regime == Regime::Unsupported {
        (String::new(), String::new(), "unsupported".into())
    } else {
        let law = asymptotic_law(params)?;
        (
            describe_center(params, &regime),
            describe_scale(params, &regime),
            law.limit_descriptor(),
        )
    };
    match &regime {
        Regime::GaussianLinear(_) => {
            let s = singularity_data(params)?;
            constants.rho1_f64 = Some(s.rho1);
            constants.mean_coef_f64 = Some(s.mean_coef);
            constants.var_coef_f64 = Some(s.var_coef);
            constants.kappa = Some(format_rational(&s.kappa));
            constants.variability_witness_f64 = Some(s.variability_witness);
        }
        Regime::BinomialExact { p } => constants.p = Some(format_rational(p)),
        Regime::NbConditionedPoisson { r, p } => {
            constants.r = Some(format_rational(r));
            constants.p = Some(format_rational(p));
        }
        Regime::GaussianLogN { coef } => constants.log_coef = Some(format_rational(coef)),
        Regime::PoissonComplement { lambda } => constants.lambda = Some(format_rational(lambda)),
        _ => {}
    }
    Ok(ClassifyDoc {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: tool_version().into(),
        command: "classify".into(),
        params: ParamsDoc::from_params(params),
        regime: regime.tag(),
        classifiable: params.classifiable(),
        constants,
        center_desc,
        scale_desc,
        limit,
    })
}

fn describe_center(params: &GkpParams, regime: &Regime) -> String {
    match regime {
        Regime::DegenerateAtZero => "0".into(),
        Regime::DegenerateAtN => "n".into(),
        Regime::BinomialExact { p } => format!("{}*n", rat_to_f64(p)),
        Regime::GaussianLinear(_) => {
            let s = singularity_data(params).expect("linear Gaussian");
            format!("{}*n", -s.mean_coef)
        }
        Regime::NbConditionedPoisson { .. } => {
            format!("n - {}", rat_to_f64(&(&params.gamma / &params.beta_p)))
        }
        Regime::GaussianLogN { coef } => format!("{}*log(n)", rat_to_f64(coef)),
        Regime::GaussianNOverLogN => "n/log(n)".into(),
        Regime::GaussianStretchedPower => {
            let (coef, expo) = stretched_center(params);
            format!("{coef}*n^{expo}")
        }
        Regime::PoissonComplement { lambda } => format!("n - {}", rat_to_f64(lambda)),
        Regime::IndicatorSum => {
            let (m, _) = indicator_coeffs(params);
            format!("{}*n + {}*log(n)", m.0, m.1)
        }
        Regime::Unsupported => String::new(),
    }
}

fn describe_scale(params: &GkpParams, regime: &Regime) -> String {
    match regime {
        Regime::DegenerateAtZero | Regime::DegenerateAtN => "1".into(),
        Regime::BinomialExact { p } => {
            let pf = rat_to_f64(p);
            format!("sqrt({}*n)", pf * (1.0 - pf))
        }
        Regime::GaussianLinear(_) => {
            let s = singularity_data(params).expect("linear Gaussian");
            format!("sqrt({}*n)", -s.var_coef)
        }
        Regime::NbConditionedPoisson { .. } => {
            format!("sqrt({})", rat_to_f64(&(&params.gamma / &params.beta_p)))
        }
        Regime::GaussianLogN { coef } => format!("sqrt({}*log(n))", rat_to_f64(coef)),
        Regime::GaussianNOverLogN => "sqrt(n)/log(n)".into(),
        Regime::GaussianStretchedPower => {
            let (coef, expo) = stretched_center(params);
            let a = rat_to_f64(&params.alpha);
            let b = rat_to_f64(&params.beta);
            format!("sqrt({}*n^{expo})", coef * a / (a + b))
        }
        Regime::PoissonComplement { lambda } => format!("sqrt({})", rat_to_f64(lambda)),
        Regime::IndicatorSum => {
            let (_, v) = indicator_coeffs(params);
            format!("sqrt({}*n + {}*log(n))", v.0, v.1)
        }
        Regime::Unsupported => String::new(),
    }
}

fn stretched_center(params: &GkpParams) -> (f64, f64) {
    let a = rat_to_f64(&params.alpha);
    let b = rat_to_f64(&params.beta);
    let gp = rat_to_f64(&params.gamma_p);
    let expo = b / (a + b);
    (gp.powf(a / (a + b)) * a.powf(expo) / b, expo)
}

fn indicator_coeffs(params: &GkpParams) -> ((f64, f64), (f64, f64)) {
    let a = rat_to_f64(&params.alpha);
    let ap = rat_to_f64(&params.alpha_p);
    let g = rat_to_f64(&params.gamma);
    let gp = rat_to_f64(&params.gamma_p);
    let t = a + ap;
    (
        (ap / t, (gp * a - g * ap) / (t * t)),
        (
            a * ap / (t * t),
            (ap * ap * g + a * a * gp - a * ap * (g + gp)) / (t * t * t),
        ),
    )
}

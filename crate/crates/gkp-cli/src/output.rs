//! Serialized document shapes and CSV rendering.
//!
//! Every JSON document carries `schema_version`, `tool_version`, the exact
//! parameters as `num/den` strings, and is byte-deterministic for a fixed
//! config and version. Exact rationals are never serialized as floats; float
//! renderings travel in parallel `*_f64` fields. CSV column layouts are fixed
//! per subcommand and documented in `docs/cli-csv-schemas.md`.

use serde::{Deserialize, Serialize};

use gkp::scalar::format_rational;
use gkp::verify::ConvergenceReport;
use gkp::GkpParams;

pub const SCHEMA_VERSION: &str = "1";

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub alpha_p: String,
    pub beta_p: String,
    pub gamma_p: String,
}

impl ParamsDoc {
    pub fn from_params(p: &GkpParams) -> Self {
        Self {
            alpha: format_rational(&p.alpha),
            beta: format_rational(&p.beta),
            gamma: format_rational(&p.gamma),
            alpha_p: format_rational(&p.alpha_p),
            beta_p: format_rational(&p.beta_p),
            gamma_p: format_rational(&p.gamma_p),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleRowDoc {
    pub n: usize,
    /// Exact entries as `num/den` strings (exact backend only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<String>>,
    /// Scaled mantissas (float backend only); entry = mantissa · 2^log2_scale.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mantissas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2_scale: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub backend: String,
    pub n_max: usize,
    pub rows: Vec<TriangleRowDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PmfDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub backend: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<String>>,
    pub probabilities_f64: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentsDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub backend: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<String>,
    pub mean_f64: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance: Option<String>,
    pub variance_f64: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyConstantsDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho1_f64: Option<f64>,
    /// Coefficient of n in the mean (−𝔪 for the linear Gaussian cases).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_coef_f64: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub var_coef_f64: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variability_witness_f64: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_coef: Option<String>,
}

impl ClassifyConstantsDoc {
    pub fn empty() -> Self {
        Self {
            rho1_f64: None,
            mean_coef_f64: None,
            var_coef_f64: None,
            kappa: None,
            variability_witness_f64: None,
            p: None,
            r: None,
            lambda: None,
            log_coef: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub regime: String,
    pub classifiable: bool,
    pub constants: ClassifyConstantsDoc,
    pub center_desc: String,
    pub scale_desc: String,
    pub limit: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub n_max: usize,
    pub xs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub max_abs: String,
    pub max_abs_f64: f64,
    pub exact_zero: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaddleDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub x: String,
    pub n: usize,
    pub r: f64,
    pub residual_rel: f64,
    pub h1: f64,
    pub h2: f64,
    pub predicted_mean: f64,
    pub predicted_variance: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportRowDoc {
    pub n: usize,
    pub mean_f64: f64,
    pub variance_f64: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance: Option<String>,
    pub center: f64,
    pub scale_sq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv_exact: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub params: ParamsDoc,
    pub regime: String,
    pub backend: String,
    pub grid: Vec<usize>,
    pub rows: Vec<ReportRowDoc>,
}

impl ReportDoc {
    pub fn from_report(command: &str, report: &ConvergenceReport) -> Self {
        let rows = report
            .rows
            .iter()
            .map(|r| ReportRowDoc {
                n: r.n,
                mean_f64: r.mean,
                variance_f64: r.variance,
                mean: r.mean_exact.as_ref().map(format_rational),
                variance: r.variance_exact.as_ref().map(format_rational),
                center: r.center,
                scale_sq: r.scale_sq,
                center_ratio: r.center_ratio,
                ks: r.ks,
                tv: r.tv,
                tv_exact: r.tv_exact.as_ref().map(format_rational),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: tool_version().into(),
            command: command.into(),
            params: ParamsDoc::from_params(&report.params),
            regime: report.regime.tag(),
            backend: report.backend.into(),
            grid: report.rows.iter().map(|r| r.n).collect(),
            rows,
        }
    }
}

fn csv_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_quote(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn csv_opt_str(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

/// CSV renderings; column layouts documented in docs/cli-csv-schemas.md.
pub fn triangle_csv(doc: &TriangleDoc) -> String {
    let mut out = String::from("n,k,value,log2_scale\n");
    for row in &doc.rows {
        let scale = row.log2_scale.unwrap_or(0.0);
        if let Some(entries) = &row.entries {
            for (k, e) in entries.iter().enumerate() {
                out.push_str(&format!("{},{},{},{}\n", row.n, k, e, scale));
            }
        } else if let Some(mantissas) = &row.mantissas {
            for (k, m) in mantissas.iter().enumerate() {
                out.push_str(&format!("{},{},{},{}\n", row.n, k, m, scale));
            }
        }
    }
    out
}

pub fn pmf_csv(doc: &PmfDoc) -> String {
    let mut out = String::from("k,p,p_f64\n");
    for (k, pf) in doc.probabilities_f64.iter().enumerate() {
        let p = doc
            .probabilities
            .as_ref()
            .map(|v| v[k].clone())
            .unwrap_or_else(|| pf.to_string());
        out.push_str(&format!("{k},{p},{pf}\n"));
    }
    out
}

pub fn moments_csv(doc: &MomentsDoc) -> String {
    format!(
        "n,mean,mean_f64,variance,variance_f64\n{},{},{},{},{}\n",
        doc.n,
        csv_opt_str(&doc.mean),
        doc.mean_f64,
        csv_opt_str(&doc.variance),
        doc.variance_f64
    )
}

pub fn classify_csv(doc: &ClassifyDoc) -> String {
    let mut out = String::from("field,value\n");
    out.push_str(&format!("regime,{}\n", doc.regime));
    out.push_str(&format!("classifiable,{}\n", doc.classifiable));
    let c = &doc.constants;
    for (name, value) in [
        ("rho1_f64", csv_opt_f64(c.rho1_f64)),
        ("mean_coef_f64", csv_opt_f64(c.mean_coef_f64)),
        ("var_coef_f64", csv_opt_f64(c.var_coef_f64)),
        ("kappa", csv_opt_str(&c.kappa)),
        (
            "variability_witness_f64",
            csv_opt_f64(c.variability_witness_f64),
        ),
        ("p", csv_opt_str(&c.p)),
        ("r", csv_opt_str(&c.r)),
        ("lambda", csv_opt_str(&c.lambda)),
        ("log_coef", csv_opt_str(&c.log_coef)),
    ] {
        if !value.is_empty() {
            out.push_str(&format!("{name},{value}\n"));
        }
    }
    out.push_str(&format!("center_desc,{}\n", csv_quote(&doc.center_desc)));
    out.push_str(&format!("scale_desc,{}\n", csv_quote(&doc.scale_desc)));
    out.push_str(&format!("limit,{}\n", csv_quote(&doc.limit)));
    out
}

pub fn check_csv(doc: &CheckDoc) -> String {
    format!(
        "n_max,xs,variant,max_abs,max_abs_f64,exact_zero\n{},{},{},{},{},{}\n",
        doc.n_max,
        doc.xs.join(";"),
        doc.variant.clone().unwrap_or_default(),
        doc.max_abs,
        doc.max_abs_f64,
        doc.exact_zero
    )
}

pub fn saddle_csv(doc: &SaddleDoc) -> String {
    format!(
        "x,n,r,residual_rel,h1,h2,predicted_mean,predicted_variance\n{},{},{},{},{},{},{},{}\n",
        doc.x,
        doc.n,
        doc.r,
        doc.residual_rel,
        doc.h1,
        doc.h2,
        doc.predicted_mean,
        doc.predicted_variance
    )
}

pub fn report_csv(doc: &ReportDoc) -> String {
    let mut out = String::from("n,mean,variance,center,scale_sq,center_ratio,ks,tv,tv_exact\n");
    for r in &doc.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.mean_f64,
            r.variance_f64,
            r.center,
            r.scale_sq,
            csv_opt_f64(r.center_ratio),
            csv_opt_f64(r.ks),
            csv_opt_f64(r.tv),
            csv_opt_str(&r.tv_exact),
        ));
    }
    out
}

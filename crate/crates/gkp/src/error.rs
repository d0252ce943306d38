use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter point is outside the classifiable families")]
    Unclassifiable,

    #[error("row {n} sums to zero; the row random variable is undefined there")]
    ZeroRowSum { n: usize },

    #[error("row {n} has a negative entry; it does not normalize to a distribution")]
    NegativeEntry { n: usize },

    #[error("row {n} not available; table holds rows 0..={max}")]
    RowMissing { n: usize, max: usize },

    #[error("exact storage budget exhausted at row {n}: {used} of {budget} bytes")]
    ResourceLimit {
        used: usize,
        budget: usize,
        n: usize,
    },

    #[error("operation requires regime {expected}; parameters classify as {found}")]
    WrongRegime {
        expected: &'static str,
        found: String,
    },

    #[error("saddle solver failed to reach relative residual {tol:e} within {iters} iterations")]
    NoConvergence { iters: usize, tol: f64 },

    #[error("indicator probability has zero denominator at k = {k}")]
    ZeroDenominator { k: usize },

    #[error("series {op} requires constant term {required}")]
    ConstantTerm {
        op: &'static str,
        required: &'static str,
    },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name, used by the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Unclassifiable => "Unclassifiable",
            Error::ZeroRowSum { .. } => "ZeroRowSum",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::RowMissing { .. } => "RowMissing",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::WrongRegime { .. } => "WrongRegime",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::ConstantTerm { .. } => "ConstantTerm",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

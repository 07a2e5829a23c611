use thiserror::Error;

/// Errors raised by every model in the crate.
///
/// The variants are grouped by what the caller can do about them: bad input
/// ([`Error::InvalidInput`], [`Error::PreconditionFailure`]), operations that
/// are mathematically undefined for the given values, and enumeration budgets.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    PreconditionFailure(String),

    #[error("conditioning is undefined: {0}")]
    UndefinedConditioning(String),

    /// Dempster's rule has a zero normalizer: the sources contradict each other completely.
    #[error("total conflict: the orthogonal sum is not defined")]
    TotalConflict,

    #[error("agent {agent} has no probability assignment at world {world}")]
    MissingProbability { agent: String, world: String },

    #[error("product update is undefined at ({world}, {event}): zero normalizer")]
    UndefinedUpdate { world: String, event: String },

    #[error("closed-world closure is inconsistent; negated atoms: {}", atoms.join(", "))]
    CwaInconsistent { atoms: Vec<String> },

    #[error("audit incomplete: {0}")]
    AuditIncomplete(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::PreconditionFailure(_) => "precondition-failure",
            Error::UndefinedConditioning(_) => "undefined-conditioning",
            Error::TotalConflict => "total-conflict",
            Error::MissingProbability { .. } => "missing-probability",
            Error::UndefinedUpdate { .. } => "undefined-update",
            Error::CwaInconsistent { .. } => "cwa-inconsistent",
            Error::AuditIncomplete(_) => "audit-incomplete",
            Error::BudgetExceeded(_) => "budget-exceeded",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Tolerance used for every normalization check in the crate.
pub const TOLERANCE: f64 = 1e-9;

pub(crate) fn check_unit(value: f64, what: &str) -> Result<()> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(invalid(format!("{what} must lie in [0, 1], got {value}")))
    }
}

pub(crate) fn check_sums_to_one(values: impl IntoIterator<Item = f64>, what: &str) -> Result<()> {
    let total: f64 = values.into_iter().sum();
    if (total - 1.0).abs() <= TOLERANCE {
        Ok(())
    } else {
        Err(invalid(format!("{what} must sum to 1 (within {TOLERANCE}), got {total}")))
    }
}

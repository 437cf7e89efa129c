use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
///
/// Finders distinguish between an honest miss ([`Error::HypothesisUnmet`]),
/// which happens when the degree or dichromatic bound of the underlying
/// theorem does not hold, and [`Error::Internal`], which means the bound
/// held and the construction still failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid digraph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("internal error (hypothesis held, construction failed): {0}")]
    Internal(String),
    #[error("exact solver refuses a digraph on {vertices} vertices (limit {limit})")]
    SizeGuard { vertices: usize, limit: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
}

impl Error {
    /// Short machine-readable tag, used by the command line surface.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Parse { .. } => "parse",
            Error::InvalidPattern(_) => "invalid_pattern",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::HypothesisUnmet(_) => "hypothesis_unmet",
            Error::Internal(_) => "internal",
            Error::SizeGuard { .. } => "size_guard",
            Error::BudgetExceeded(_) => "budget_exceeded",
        }
    }

    /// True for errors caused by malformed user input rather than a failed search.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidGraph(_)
                | Error::Parse { .. }
                | Error::InvalidPattern(_)
                | Error::InvalidArgument(_)
        )
    }
}

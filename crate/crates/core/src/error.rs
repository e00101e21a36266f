use thiserror::Error;

/// Errors raised by game evaluation, verification and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DcsError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {what} needs {needed} evaluations, cap is {cap}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("interaction graph is not a tree or forest: {0}")]
    NotATree(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl DcsError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        DcsError::InvalidInput(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        DcsError::BudgetExceeded {
            what: what.into(),
            needed,
            cap,
        }
    }

    /// Stable process exit code for the command-line front end.
    ///
    /// `1` is reserved for "verified false / infeasible" and is never
    /// produced by an error.
    pub fn exit_code(&self) -> i32 {
        match self {
            DcsError::BudgetExceeded { .. } => 3,
            DcsError::Internal(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = DcsError> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised across the crate.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`])
/// and to one of two failure classes: a violated precondition or an exhausted
/// resource budget.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial is not allowed here")]
    ConstantPolynomial,
    #[error("invalid interval: need a < b, got [{a}, {b}]")]
    InvalidInterval { a: String, b: String },
    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("requested order {requested} exceeds available data ({available})")]
    OrderTooLarge { requested: usize, available: usize },
    #[error("irreducibility undecided: degree {degree} exceeds cap {cap}")]
    IrreducibilityUndecided { degree: usize, cap: usize },
    #[error("irreducibility undecided: {0}")]
    FactorSearchExhausted(String),
    #[error("root finder did not certify all roots at {precision} bits")]
    RootsNotCertified { precision: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("discriminant vanishes; polynomial has a repeated root")]
    RepeatedRoot,
    #[error("search budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("linear program failed: {0}")]
    LinearProgram(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::InvalidInterval { .. } => "invalid_interval",
            Error::MalformedPolynomial(_) => "malformed_polynomial",
            Error::MalformedNumber(_) => "malformed_number",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::OrderTooLarge { .. } => "order_too_large",
            Error::IrreducibilityUndecided { .. } => "irreducibility_undecided",
            Error::FactorSearchExhausted(_) => "factor_search_exhausted",
            Error::RootsNotCertified { .. } => "roots_not_certified",
            Error::Precondition(_) => "precondition",
            Error::RepeatedRoot => "repeated_root",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::LinearProgram(_) => "linear_program",
            Error::Inconsistent(_) => "inconsistent",
        }
    }

    /// True when the failure comes from running out of precision or search
    /// budget rather than from bad input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::RootsNotCertified { .. }
                | Error::BudgetExceeded { .. }
                | Error::FactorSearchExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

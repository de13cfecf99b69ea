use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants are grouped into families (see [`ErrorFamily`]) so front ends can
/// map them onto stable exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over the tower")]
    NotIrreducible,
    #[error("minimal polynomial must be monic of degree >= 2")]
    BadMinimalPolynomial,
    #[error("operands live over incompatible field towers")]
    FieldMismatch,
    #[error("element does not belong to the field tower")]
    ElementOutsideTower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported factorization over an extension of Q: {0}")]
    UnsupportedExtension(String),
    #[error("squarefree decomposition unsupported in characteristic {0} for this degree")]
    SquarefreeUnsupported(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty input")]
    EmptyInput,
    #[error("zero input")]
    ZeroInput,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("the ideal must have exactly two generators")]
    NotTwoGenerated,
    #[error("rational function has nonzero value {0} at the divisor")]
    NonzeroValue(i64),
    #[error("residue image is constant: the divisor is not dicritical")]
    ConstantImage,
    #[error("base point depth exceeded the bound {0}")]
    DepthExceeded(usize),
    #[error("base point tree exceeded the node budget {0}")]
    NodeBudget(usize),
    #[error("truncation did not stabilize below degree {0}")]
    Unstable(usize),
    #[error("reduction exponent bound {0} exhausted")]
    BudgetExceeded(usize),
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("simple ideal check failed: {0}")]
    NotSimple(String),
    #[error("polynomial is constant")]
    ConstantPolynomial,
}

/// Coarse classification of [`Error`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorFamily {
    /// Field construction and factorization failures.
    Arithmetic,
    /// Inputs violating an operation's precondition.
    Input,
    /// Depth, node, truncation or exponent budgets exhausted.
    Budget,
}

impl Error {
    pub fn family(&self) -> ErrorFamily {
        use Error::*;
        match self {
            NotPrime(_)
            | NotIrreducible
            | BadMinimalPolynomial
            | FieldMismatch
            | ElementOutsideTower
            | DivisionByZero
            | UnsupportedExtension(_)
            | SquarefreeUnsupported(_) => ErrorFamily::Arithmetic,
            DepthExceeded(_) | NodeBudget(_) | Unstable(_) | BudgetExceeded(_) => {
                ErrorFamily::Budget
            }
            _ => ErrorFamily::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

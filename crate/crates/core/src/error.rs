use thiserror::Error;

/// Errors raised by the algebra engines.
///
/// `BudgetExceeded` is an ordinary outcome for instances that are too large
/// for the configured step budget; callers that produce verdicts map it to
/// an indefinite verdict instead of failing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("generator {index} is not homogeneous")]
    InhomogeneousGenerator { index: usize },
    #[error("quotient algebra must be flagged Cohen-Macaulay for the dimension criterion")]
    NonCmWithoutFlag,
    #[error("transformation matrix is not invertible")]
    SingularMatrix,
    #[error("shift {index} has degree {shift_degree}, generator has degree {generator_degree}")]
    DegreeViolation {
        index: usize,
        shift_degree: u32,
        generator_degree: u32,
    },
    #[error("normal ordering did not terminate within {budget} steps")]
    NonTerminating { budget: u64 },
    #[error("graded image of the zero element")]
    ZeroElement,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("graded images do not form a complete intersection")]
    NotCompleteIntersection,
    #[error("element {index} failed the centrality check")]
    CentralityFailure { index: usize },
    #[error("graded image {index} disagrees with the commutative determinant")]
    GradedMismatch { index: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

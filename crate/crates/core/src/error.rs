use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("element {0} does not lie in the ambient")]
    NotInAmbient(String),

    #[error("{what}: size {size} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        size: String,
        limit: u64,
    },

    /// The set of basis profiles has no least element. Never expected.
    #[error("profile set has no unique minimal element: {0}")]
    NoUniqueMinimum(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid elementary operation: {0}")]
    InvalidOp(String),

    #[error("map is not surjective onto the target group")]
    NotSurjective,

    #[error("given elements are not a basis of the target group: {0}")]
    NotABasis(String),

    #[error("coordinate {index} of {element} is not 0, 1 or -1")]
    NotSignRepresentable { element: String, index: usize },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidAmbient(_) => "invalid_ambient",
            Error::NotAUnit { .. } => "not_a_unit",
            Error::NotInAmbient(_) => "not_in_ambient",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::NoUniqueMinimum(_) => "no_unique_minimum",
            Error::NotApplicable(_) => "not_applicable",
            Error::InvalidOp(_) => "invalid_op",
            Error::NotSurjective => "not_surjective",
            Error::NotABasis(_) => "not_a_basis",
            Error::NotSignRepresentable { .. } => "not_sign_representable",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Dimension(_) => "dimension",
        }
    }

    pub(crate) fn guard(what: &'static str, size: impl ToString, limit: u64) -> Self {
        Error::GuardExceeded {
            what,
            size: size.to_string(),
            limit,
        }
    }
}

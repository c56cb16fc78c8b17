use thiserror::Error;

/// Errors raised by the library. Every variant belongs to one [`ErrorKind`],
/// which the command-line front end maps onto its exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ray {index} ({ray}) is not primitive")]
    NonPrimitiveRay { index: usize, ray: String },
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid input: {0}")]
    Parse(String),

    #[error("rays do not span the lattice; symmetry group not finite")]
    NotSpanning,
    #[error("rays do not positively span; projective case required")]
    NotPositivelySpanning,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("fan is not complete")]
    NotComplete,
    #[error("class group rank {0} exceeds the chamber enumeration limit of 4")]
    ChamberRankTooLarge(usize),
    #[error("sublattice map is not injective")]
    NotInjective,
    #[error("group element {0} does not preserve the image of the sublattice")]
    SublatticeNotPreserved(usize),
    #[error("grouping by stratum data is ill-defined for class {0}")]
    IllDefinedGrouping(String),
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Precondition,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NonPrimitiveRay { .. }
            | Error::ZeroRay { .. }
            | Error::DuplicateRay { .. }
            | Error::Dimension(_)
            | Error::InvalidFan(_)
            | Error::Parse(_) => ErrorKind::Validation,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

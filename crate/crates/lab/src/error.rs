use sombrero_core::classical::ClassicalError;
use sombrero_core::doublewell::DoubleWellError;
use sombrero_core::qm1d::Qm1dError;
use sombrero_core::spinor::SpinorError;
use sombrero_core::{NumericsError, UnitsError};

use crate::figure::FigureError;
use crate::table::TableError;

/// Process exit status for validation failures: bad arguments, bad parameters,
/// unwritable output.
pub const EXIT_VALIDATION: i32 = 1;
/// Process exit status for numerical failures.
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) | Self::Io { .. } => EXIT_VALIDATION,
            Self::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

fn numerics_is_invalid(e: &NumericsError) -> bool {
    matches!(
        e,
        NumericsError::InvalidGrid { .. }
            | NumericsError::InvalidArgument { .. }
            | NumericsError::LengthMismatch { .. }
    )
}

fn qm1d_is_invalid(e: &Qm1dError) -> bool {
    match e {
        Qm1dError::InvalidParameter { .. }
        | Qm1dError::Units(_)
        | Qm1dError::GridNotSymmetric
        | Qm1dError::PotentialNotSymmetric { .. }
        | Qm1dError::NonFinitePotential { .. } => true,
        Qm1dError::Numerics(n) => numerics_is_invalid(n),
        Qm1dError::NotNormalized { .. } => false,
    }
}

fn classify(invalid: bool, message: String) -> LabError {
    if invalid {
        LabError::Invalid(message)
    } else {
        LabError::Numerical(message)
    }
}

impl From<NumericsError> for LabError {
    fn from(e: NumericsError) -> Self {
        classify(numerics_is_invalid(&e), e.to_string())
    }
}

impl From<UnitsError> for LabError {
    fn from(e: UnitsError) -> Self {
        Self::Invalid(e.to_string())
    }
}

impl From<Qm1dError> for LabError {
    fn from(e: Qm1dError) -> Self {
        classify(qm1d_is_invalid(&e), e.to_string())
    }
}

impl From<ClassicalError> for LabError {
    fn from(e: ClassicalError) -> Self {
        let invalid = match &e {
            ClassicalError::InvalidParameter { .. } => true,
            ClassicalError::Numerics(n) => numerics_is_invalid(n),
            _ => false,
        };
        classify(invalid, e.to_string())
    }
}

impl From<DoubleWellError> for LabError {
    fn from(e: DoubleWellError) -> Self {
        let invalid = match &e {
            DoubleWellError::InvalidParameter { .. }
            | DoubleWellError::InfiniteBarrier
            | DoubleWellError::GridDoesNotSpanWell
            | DoubleWellError::MissingPair { .. } => true,
            DoubleWellError::Numerics(n) => numerics_is_invalid(n),
            DoubleWellError::Qm1d(q) => qm1d_is_invalid(q),
            _ => false,
        };
        classify(invalid, e.to_string())
    }
}

impl From<SpinorError> for LabError {
    fn from(e: SpinorError) -> Self {
        let invalid = match &e {
            SpinorError::InvalidParameter { .. } => true,
            SpinorError::Qm1d(q) => qm1d_is_invalid(q),
            SpinorError::Numerics(n) => numerics_is_invalid(n),
        };
        classify(invalid, e.to_string())
    }
}

impl From<FigureError> for LabError {
    fn from(e: FigureError) -> Self {
        match e {
            FigureError::InvalidRange(..) => Self::Invalid(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

impl From<TableError> for LabError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Io { path, source } => Self::Io { path, source },
            other => Self::Numerical(other.to_string()),
        }
    }
}

//! One-dimensional stationary Schrödinger problems on a grid.
//!
//! The Hamiltonian `−(ħ²/2m) d²/dx² + V(x)` is discretised with the
//! three-point Laplacian on the interior nodes of a [`Grid`]; the two end
//! nodes carry the Dirichlet condition `ψ = 0`. Infinite walls and unbounded
//! domains are both represented by that box.

mod factorized;
mod hamiltonian;
mod library;
mod parity;

use core::fmt;

use crate::numerics::NumericsError;
use crate::units::UnitsError;

pub use crate::numerics::TabulatedState;
pub use factorized::{
    annihilation_residual, apply_annihilation, energy_expectation, quartic_exponential, sextic_ground_check,
    SexticGroundCheck,
};
pub use hamiltonian::{
    build_hamiltonian, solve_spectrum, solve_spectrum_by_parity, Level, Spectrum, LEAKAGE_THRESHOLD, PARITY_TOLERANCE,
};
pub use library::Potential;
pub use parity::{
    classify_parity, expectation_x, parity_audit, symmetry_deviation, AuditLevel, Parity, ParityAudit, ParityReport,
    DEGENERACY_TOLERANCE, SYMMETRY_TOLERANCE,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Qm1dError {
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    /// The potential is not finite at an interior grid node.
    NonFinitePotential {
        x: f64,
    },
    NotNormalized {
        norm: f64,
    },
    PotentialNotSymmetric {
        max_deviation: f64,
    },
    GridNotSymmetric,
    Units(UnitsError),
    Numerics(NumericsError),
}

impl fmt::Display for Qm1dError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
            Self::NonFinitePotential { x } => {
                write!(f, "potential is not finite at interior node x = {x}")
            }
            Self::NotNormalized { norm } => write!(f, "state is not normalised (norm {norm})"),
            Self::PotentialNotSymmetric { max_deviation } => {
                write!(f, "potential is not reflection symmetric (deviation {max_deviation:e})")
            }
            Self::GridNotSymmetric => f.write_str("grid is not symmetric about the origin"),
            Self::Units(e) => write!(f, "{e}"),
            Self::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Qm1dError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Units(e) => Some(e),
            Self::Numerics(e) => Some(e),
            _ => None,
        }
    }
}

impl From<NumericsError> for Qm1dError {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

impl From<UnitsError> for Qm1dError {
    fn from(e: UnitsError) -> Self {
        Self::Units(e)
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64, Qm1dError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Qm1dError::InvalidParameter { name, value })
    }
}

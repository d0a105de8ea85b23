//! Classical motion in one-dimensional potentials: phase portraits, the
//! separatrix, and the local structure of a potential maximum.

mod components;
mod local_max;
mod portrait;

use core::fmt;

use crate::numerics::NumericsError;
use crate::qm1d::{Potential, Qm1dError};

pub use components::{allowed_components, classify_trajectory, Component, SymmetryClass, SCAN_SAMPLES};
pub use local_max::{local_max_model, local_turning_points, LocalMaxModel, DEFAULT_MAX_HALF_ORDER};
pub use portrait::{hamiltonian, phase_portrait, PortraitEntry, Trajectory};

#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalError {
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    /// The point is not a local maximum up to the searched order.
    NotAMaximum {
        order: u32,
    },
    /// A derivative estimate could not be told apart from zero.
    ToleranceAmbiguous {
        order: u32,
        estimate: f64,
        noise: f64,
    },
    NoTurningPoints {
        e_prime: f64,
    },
    AtSeparatrix,
    EnergyBelowMinimum {
        energy: f64,
        x0: f64,
    },
    Numerics(NumericsError),
}

impl fmt::Display for ClassicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
            Self::NotAMaximum { order } => {
                write!(f, "not a local maximum (decided at derivative order {order})")
            }
            Self::ToleranceAmbiguous { order, estimate, noise } => write!(
                f,
                "derivative of order {order} ({estimate:e}) is within the noise band ({noise:e})"
            ),
            Self::NoTurningPoints { e_prime } => {
                write!(f, "no turning points: energy {e_prime} lies above the maximum")
            }
            Self::AtSeparatrix => f.write_str("energy equals the maximum; turning points merge"),
            Self::EnergyBelowMinimum { energy, x0 } => {
                write!(f, "energy {energy} is not classically allowed near x = {x0}")
            }
            Self::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ClassicalError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Numerics(e) => Some(e),
            _ => None,
        }
    }
}

impl From<NumericsError> for ClassicalError {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

impl From<Qm1dError> for ClassicalError {
    fn from(e: Qm1dError) -> Self {
        match e {
            Qm1dError::InvalidParameter { name, value } => Self::InvalidParameter { name, value },
            Qm1dError::Numerics(n) => Self::Numerics(n),
            _ => Self::InvalidParameter {
                name: "potential",
                value: f64::NAN,
            },
        }
    }
}

/// `λx⁴ − μx²` with its analytic slope.
pub fn sombrero_potential(lambda: f64, mu: f64) -> Result<Potential, ClassicalError> {
    Ok(Potential::sombrero(lambda, mu)?)
}

/// The force `2μx − 4λx³` of the sombrero potential.
pub fn sombrero_force(lambda: f64, mu: f64) -> Result<impl Fn(f64) -> f64 + Copy, ClassicalError> {
    sombrero_potential(lambda, mu)?;
    Ok(move |x: f64| 2.0 * mu * x - 4.0 * lambda * x * x * x)
}

/// `ν sinh²(αx − 3) sinh²((1 + αx)/20)`.
pub fn asymmetric_demo_potential(nu: f64, alpha: f64) -> Result<Potential, ClassicalError> {
    Ok(Potential::asymmetric_sinh(nu, alpha)?)
}

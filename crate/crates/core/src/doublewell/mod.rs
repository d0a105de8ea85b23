//! Exact analysis of the piecewise-constant double well: height `α` on
//! `|x| ≤ b`, zero on `b < |x| < a`, hard walls at `|x| = a`.
//!
//! Sub-barrier levels are the zeros of the matching function
//! `g(E) = k·cot(k(a−b)) + κ·t(κb)` with `k = √(2mE)/ħ`,
//! `κ = √(2m(α−E))/ħ`, and `t = tanh` (even) or `coth` (odd).

mod levels;
mod states;

use core::fmt;

use crate::math;
use crate::numerics::NumericsError;
use crate::qm1d::{Parity, Potential, Qm1dError};
use crate::units::Units;

pub use levels::{
    level_pair, levels_below_barrier, limit_levels, parity_gap_sweep, threshold_alpha, GapEntry, PairGap, WellLevel,
};
pub use states::{assemble_wavefunction, infinite_barrier_states, AssembledState, ConcentratedStates};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Barrier {
    Finite(f64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WellParams {
    pub a: f64,
    pub b: f64,
    pub barrier: Barrier,
    pub units: Units,
}

impl WellParams {
    pub fn new(a: f64, b: f64, barrier: Barrier, units: Units) -> Result<Self, DoubleWellError> {
        if !(a.is_finite() && b.is_finite() && b > 0.0 && b < a) {
            return Err(DoubleWellError::InvalidParameter {
                name: "geometry (need 0 < b < a)",
                value: b,
            });
        }
        if let Barrier::Finite(alpha) = barrier {
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(DoubleWellError::InvalidParameter {
                    name: "alpha",
                    value: alpha,
                });
            }
        }
        let units = Units::new(units.hbar, units.mass)?;
        Ok(Self { a, b, barrier, units })
    }

    /// Finite barrier, `ħ = m = 1`.
    pub fn finite(alpha: f64, a: f64, b: f64) -> Result<Self, DoubleWellError> {
        Self::new(a, b, Barrier::Finite(alpha), Units::default())
    }

    /// Width `a − b` of each well.
    pub fn well_width(&self) -> f64 {
        self.a - self.b
    }

    pub fn alpha(&self) -> Result<f64, DoubleWellError> {
        match self.barrier {
            Barrier::Finite(alpha) => Ok(alpha),
            Barrier::Infinite => Err(DoubleWellError::InfiniteBarrier),
        }
    }

    /// The same well as a grid potential.
    pub fn potential(&self) -> Result<Potential, DoubleWellError> {
        Ok(Potential::piecewise_double_well(self.alpha()?, self.a, self.b)?)
    }

    fn wavenumber(&self, energy: f64) -> f64 {
        math::sqrt(2.0 * self.units.mass * energy) / self.units.hbar
    }

    fn decay_rate(&self, alpha: f64, energy: f64) -> f64 {
        math::sqrt(2.0 * self.units.mass * (alpha - energy).max(0.0)) / self.units.hbar
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DoubleWellError {
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    OutOfRange {
        energy: f64,
        alpha: f64,
    },
    /// The operation needs a finite barrier.
    InfiniteBarrier,
    /// No crossing was found for `α` in `[lo, hi]`.
    BracketFailure {
        lo: f64,
        hi: f64,
    },
    /// A supposed root does not satisfy the derivative matching at `|x| = b`.
    Mismatch {
        residual: f64,
    },
    /// The grid must run from `−a` to `a`.
    GridDoesNotSpanWell,
    MissingPair {
        alpha: f64,
        n: usize,
    },
    Numerics(NumericsError),
    Qm1d(Qm1dError),
}

impl fmt::Display for DoubleWellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
            Self::OutOfRange { energy, alpha } => {
                write!(f, "energy {energy} is outside the sub-barrier range (0, {alpha})")
            }
            Self::InfiniteBarrier => f.write_str("operation requires a finite barrier"),
            Self::BracketFailure { lo, hi } => write!(f, "no threshold crossing for alpha in [{lo}, {hi}]"),
            Self::Mismatch { residual } => {
                write!(
                    f,
                    "derivative mismatch {residual:e} at the barrier edge; not an eigenvalue"
                )
            }
            Self::GridDoesNotSpanWell => f.write_str("grid must span [-a, a]"),
            Self::MissingPair { alpha, n } => write!(f, "pair {n} does not exist below alpha = {alpha}"),
            Self::Numerics(e) => write!(f, "{e}"),
            Self::Qm1d(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DoubleWellError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Numerics(e) => Some(e),
            Self::Qm1d(e) => Some(e),
            _ => None,
        }
    }
}

impl From<NumericsError> for DoubleWellError {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

impl From<Qm1dError> for DoubleWellError {
    fn from(e: Qm1dError) -> Self {
        Self::Qm1d(e)
    }
}

impl From<crate::units::UnitsError> for DoubleWellError {
    fn from(e: crate::units::UnitsError) -> Self {
        Self::Qm1d(Qm1dError::Units(e))
    }
}

/// `κ·tanh(κb)` or `κ·coth(κb)`, continuous down to `κ = 0`.
pub(crate) fn barrier_log_derivative(kappa: f64, b: f64, parity: Parity) -> f64 {
    let z = kappa * b;
    match parity {
        Parity::Odd if z < 1e-4 => 1.0 / b + kappa * z / 3.0,
        Parity::Odd => kappa / math::tanh(z),
        _ => kappa * math::tanh(z),
    }
}

/// `g` at `0 < E ≤ α`; `E = α` is the `κ → 0` limit.
pub(crate) fn residual_unchecked(energy: f64, parity: Parity, params: &WellParams, alpha: f64) -> f64 {
    let k = params.wavenumber(energy);
    let kappa = params.decay_rate(alpha, energy);
    let theta = k * params.well_width();
    k * math::cos(theta) / math::sin(theta) + barrier_log_derivative(kappa, params.b, parity)
}

fn check_range(energy: f64, params: &WellParams) -> Result<f64, DoubleWellError> {
    let alpha = params.alpha()?;
    if !(energy > 0.0 && energy < alpha) {
        return Err(DoubleWellError::OutOfRange { energy, alpha });
    }
    Ok(alpha)
}

/// The unsquared matching function; its zeros in `(0, α)` are exactly the
/// sub-barrier levels of the given parity. `Indefinite` is treated as even.
pub fn matching_residual(energy: f64, parity: Parity, params: &WellParams) -> Result<f64, DoubleWellError> {
    let alpha = check_range(energy, params)?;
    Ok(residual_unchecked(energy, parity, params, alpha))
}

/// `E·cot²(k(a−b)) − (α−E)·t²(κb)`. Vanishes at every level, and also at
/// the spurious roots where `cot` has the wrong sign.
pub fn squared_condition_residual(energy: f64, parity: Parity, params: &WellParams) -> Result<f64, DoubleWellError> {
    let alpha = check_range(energy, params)?;
    let k = params.wavenumber(energy);
    let kappa = params.decay_rate(alpha, energy);
    let theta = k * params.well_width();
    let cot = math::cos(theta) / math::sin(theta);
    let z = kappa * params.b;
    let t = match parity {
        Parity::Odd => 1.0 / math::tanh(z),
        _ => math::tanh(z),
    };
    Ok(energy * cot * cot - (alpha - energy) * t * t)
}

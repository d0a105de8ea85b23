//! Numerical kernels shared by every model.

mod grid;
mod integrate;
mod quadrature;
mod rational;
mod roots;
mod tridiag;

use core::fmt;

pub use grid::{Grid, TabulatedState};
pub use integrate::{integrate_hamiltonian, integrate_hamiltonian_with, PhaseState, Scheme};
pub use quadrature::{inner_product, trapezoid};
pub use rational::{best_rational_approximations, RationalApprox};
pub use roots::{find_root_bracketed, ROOT_MAX_ITERATIONS};
pub use tridiag::{eig_sym_tridiag, EigenPair, TridiagonalOperator};

#[derive(Clone, Debug, PartialEq)]
pub enum NumericsError {
    InvalidGrid {
        reason: &'static str,
    },
    InvalidArgument {
        reason: &'static str,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    GridMismatch,
    /// `f(lo)` and `f(hi)` do not straddle zero.
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    /// The bracket stopped shrinking; usually a pole rather than a root.
    MaxIterations {
        iterations: usize,
        lo: f64,
        hi: f64,
    },
    ConvergenceFailure {
        index: usize,
    },
    /// The integrated state left the representable range at `step`.
    NonFinite {
        step: usize,
    },
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            Self::InvalidArgument { reason } => write!(f, "invalid argument: {reason}"),
            Self::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} samples, found {found}")
            }
            Self::GridMismatch => f.write_str("states are sampled on different grids"),
            Self::NoSignChange { lo, hi, f_lo, f_hi } => {
                write!(f, "no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")
            }
            Self::MaxIterations { iterations, lo, hi } => {
                write!(f, "bracket [{lo}, {hi}] failed to shrink after {iterations} iterations")
            }
            Self::ConvergenceFailure { index } => {
                write!(f, "eigenpair {index} failed to converge")
            }
            Self::NonFinite { step } => write!(f, "state became non-finite at step {step}"),
        }
    }
}

impl core::error::Error for NumericsError {}

//! Toy models of spontaneous symmetry breakdown, computed and checked numerically.
//!
//! The crate is `no_std` (it needs `alloc`) and carries no IO. It is organised
//! bottom-up:
//!
//! - [`numerics`]: grids, bracketed roots, symmetric tridiagonal eigenpairs,
//!   symplectic integration, trapezoidal quadrature and continued fractions.
//! - [`classical`]: Hamiltonian flow in one dimension, phase portraits,
//!   separatrices and the local even model around a maximum of the potential.
//! - [`qm1d`]: the potential library, a finite-difference Schrödinger solver
//!   with a Dirichlet box, parity classification and the factorised sextic well.
//! - [`doublewell`]: the exact treatment of the piecewise-constant double well
//!   and its infinite-barrier limit.
//! - [`spinor`]: two displaced oscillators acting on spinors, with a σ₃ internal
//!   symmetry that is degenerate only at the ground level.
//!
//! Units are explicit: every quantum calculation takes a [`Units`] value
//! carrying ħ and the particle mass.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod math;

pub mod classical;
pub mod doublewell;
pub mod numerics;
pub mod potential;
pub mod qm1d;
pub mod spinor;
mod units;

pub use numerics::{Grid, NumericsError, TabulatedState, TridiagonalOperator};
pub use potential::PotentialFn;
pub use units::{Units, UnitsError};

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use super::levels::WellLevel;
use super::{barrier_log_derivative, DoubleWellError, WellParams};
use crate::math;
use crate::numerics::{Grid, TabulatedState};
use crate::qm1d::Parity;

/// A matched piecewise eigenfunction with its seam residuals at `|x| = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssembledState {
    pub state: TabulatedState,
    pub continuity_residual: f64,
    pub derivative_residual: f64,
}

/// Residual above which an assembled level is rejected as not a root.
const MATCHING_TOLERANCE: f64 = 1e-8;

fn check_span(grid: &Grid, a: f64) -> Result<(), DoubleWellError> {
    let tol = 1e-9 * a;
    if (grid.x_min() + a).abs() > tol || (grid.x_max() - a).abs() > tol {
        return Err(DoubleWellError::GridDoesNotSpanWell);
    }
    Ok(())
}

/// `sin(k(a−|x|))` in the wells (times `sign x` when odd), joined at
/// `|x| = b` to `cosh(κx)` or `sinh(κx)` in the barrier; normalised on
/// `grid`.
pub fn assemble_wavefunction(
    level: &WellLevel,
    params: &WellParams,
    grid: &Grid,
) -> Result<AssembledState, DoubleWellError> {
    let alpha = params.alpha()?;
    let energy = level.energy;
    if !(energy > 0.0 && energy < alpha) {
        return Err(DoubleWellError::OutOfRange { energy, alpha });
    }
    check_span(grid, params.a)?;
    let odd = level.parity == Parity::Odd;
    let (a, b) = (params.a, params.b);
    let k = params.wavenumber(energy);
    let kappa = params.decay_rate(alpha, energy);
    let edge = math::sin(k * (a - b));

    let outer = |x: f64| {
        let s = math::sin(k * (a - x.abs()));
        if odd && x < 0.0 {
            -s
        } else {
            s
        }
    };
    let inner = |x: f64| edge * barrier_profile(kappa, b, x, odd);

    let values: Vec<f64> = grid
        .points()
        .map(|x| {
            let ax = x.abs();
            if ax >= a {
                0.0
            } else if ax > b {
                outer(x)
            } else {
                inner(x)
            }
        })
        .collect();

    let continuity = (outer(b) - inner(b)).abs() / edge.abs().max(f64::MIN_POSITIVE);
    let slope_out = -k * math::cos(k * (a - b));
    let slope_in = edge * barrier_log_derivative(kappa, b, level.parity);
    let scale = slope_out.abs().max(slope_in.abs()).max(f64::MIN_POSITIVE);
    let derivative = (slope_out - slope_in).abs() / scale;
    if derivative > MATCHING_TOLERANCE || continuity > MATCHING_TOLERANCE {
        return Err(DoubleWellError::Mismatch {
            residual: derivative.max(continuity),
        });
    }
    let state =
        TabulatedState::new(*grid, values)?
            .normalized()?
            .with_label(format!("{}_{}", level.parity.as_str(), level.n));
    Ok(AssembledState {
        state,
        continuity_residual: continuity,
        derivative_residual: derivative,
    })
}

/// `cosh(κx)/cosh(κb)` or `sinh(κx)/sinh(κb)` for `|x| ≤ b`, without
/// overflow for large `κb`.
fn barrier_profile(kappa: f64, b: f64, x: f64, odd: bool) -> f64 {
    let z = kappa * b;
    if odd && z < 1e-8 {
        return x / b;
    }
    if z < 20.0 {
        return if odd {
            math::sinh(kappa * x) / math::sinh(z)
        } else {
            math::cosh(kappa * x) / math::cosh(z)
        };
    }
    let ax = x.abs();
    let decay = math::exp(kappa * (ax - b));
    let (qx, qb) = (math::exp(-2.0 * kappa * ax), math::exp(-2.0 * z));
    if odd {
        decay * (1.0 - qx) / (1.0 - qb) * x.signum()
    } else {
        decay * (1.0 + qx) / (1.0 + qb)
    }
}

/// Degenerate level `n` of the infinite barrier in the localised basis and in
/// the superposition basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcentratedStates {
    /// `√(2/(a−b)) sin(πn(x+a)/(a−b))` on `(−a, −b)`.
    pub psi_l: TabulatedState,
    /// `√(2/(a−b)) sin(πn(x−a)/(a−b))` on `(b, a)`.
    pub psi_r: TabulatedState,
    /// `(ψ_L + ψ_R)/√2`.
    pub psi_plus: TabulatedState,
    /// `(ψ_L − ψ_R)/√2`.
    pub psi_minus: TabulatedState,
}

/// Localised and superposed eigenstates of level `n`, each normalised on
/// `grid`, which must span `[−a, a]`.
///
/// Since `ψ_R(−x) = −ψ_L(x)`, the sum `ψ_plus` is odd and the difference
/// `ψ_minus` is even.
pub fn infinite_barrier_states(n: usize, a: f64, b: f64, grid: &Grid) -> Result<ConcentratedStates, DoubleWellError> {
    if n == 0 {
        return Err(DoubleWellError::InvalidParameter { name: "n", value: 0.0 });
    }
    if !(b > 0.0 && b < a && a.is_finite()) {
        return Err(DoubleWellError::InvalidParameter {
            name: "geometry (need 0 < b < a)",
            value: b,
        });
    }
    check_span(grid, a)?;
    let width = a - b;
    let c = math::sqrt(2.0 / width);
    let w = PI * n as f64 / width;
    let left = grid.sample(|x| {
        if x > -a && x < -b {
            c * math::sin(w * (x + a))
        } else {
            0.0
        }
    })?;
    let right = grid.sample(|x| {
        if x > b && x < a {
            c * math::sin(w * (x - a))
        } else {
            0.0
        }
    })?;
    let psi_l = left.normalized()?.with_label(format!("psi_L,{n}"));
    let psi_r = right.normalized()?.with_label(format!("psi_R,{n}"));
    let psi_plus = psi_l
        .combine(FRAC_1_SQRT_2, &psi_r, FRAC_1_SQRT_2)?
        .with_label(format!("psi_+,{n}"));
    let psi_minus = psi_l
        .combine(FRAC_1_SQRT_2, &psi_r, -FRAC_1_SQRT_2)?
        .with_label(format!("psi_-,{n}"));
    Ok(ConcentratedStates {
        psi_l,
        psi_r,
        psi_plus,
        psi_minus,
    })
}

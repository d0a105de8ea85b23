//! The sextic potential as a factorised Hamiltonian `Ĥ ∝ â†â` with
//! `â = −i(d/dx + 4a x³)` and zero mode `φ = e^{−a x⁴}`.

use alloc::vec::Vec;

use super::hamiltonian::{solve_spectrum, Level};
use super::{require_positive, Potential, Qm1dError};
use crate::math;
use crate::numerics::{trapezoid, Grid, TabulatedState};
use crate::potential::PotentialFn;
use crate::units::Units;

/// `e^{−a x⁴}` sampled on `grid` (not normalised).
pub fn quartic_exponential(a: f64, grid: &Grid) -> Result<TabulatedState, Qm1dError> {
    require_positive("a", a)?;
    let x2 = |x: f64| x * x;
    Ok(grid
        .sample(|x| math::exp(-a * x2(x) * x2(x)))?
        .with_label("exp(-a x^4)"))
}

/// `ψ' + 4a x³ ψ`, i.e. `i·âψ`, with second-order differences.
///
/// Central differences in the interior, second-order one-sided stencils at
/// the two ends.
pub fn apply_annihilation(a: f64, state: &TabulatedState) -> Result<TabulatedState, Qm1dError> {
    let grid = state.grid();
    let psi = state.values();
    let n = psi.len();
    let derivative = first_derivative(psi, grid.dx());
    let out: Vec<f64> = (0..n)
        .map(|i| {
            let x = grid.x(i);
            derivative[i] + 4.0 * a * x * x * x * psi[i]
        })
        .collect();
    Ok(TabulatedState::new(*grid, out)?)
}

/// `‖âφ‖ / ‖φ‖` for `φ = e^{−a x⁴}`; zero in the continuum limit.
pub fn annihilation_residual(a: f64, grid: &Grid) -> Result<f64, Qm1dError> {
    let phi = quartic_exponential(a, grid)?;
    Ok(apply_annihilation(a, &phi)?.norm() / phi.norm())
}

/// `⟨ψ|Ĥ|ψ⟩ / ⟨ψ|ψ⟩` in the symmetric form `∫ (ħ²/2m)ψ'² + Vψ² dx`.
///
/// The form assumes `ψ` is negligible at the grid ends.
pub fn energy_expectation<V: PotentialFn + ?Sized>(
    v: &V,
    state: &TabulatedState,
    units: Units,
) -> Result<f64, Qm1dError> {
    let units = Units::new(units.hbar, units.mass)?;
    let grid = state.grid();
    let psi = state.values();
    let d = first_derivative(psi, grid.dx());
    let kinetic = trapezoid(grid, d.iter().map(|g| g * g));
    let potential = trapezoid(grid, psi.iter().enumerate().map(|(i, p)| v.value(grid.x(i)) * p * p));
    let norm2 = trapezoid(grid, psi.iter().map(|p| p * p));
    if norm2 == 0.0 {
        return Err(Qm1dError::NotNormalized { norm: 0.0 });
    }
    Ok((units.kinetic_scale() * kinetic + potential) / norm2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SexticGroundCheck {
    pub e0: f64,
    /// `|⟨ψ₀, φ/‖φ‖⟩|`.
    pub overlap: f64,
    pub ground: Level,
}

/// Diagonalises the sextic Hamiltonian and compares its ground state with
/// `e^{−a x⁴}`.
pub fn sextic_ground_check(a: f64, grid: &Grid, units: Units) -> Result<SexticGroundCheck, Qm1dError> {
    let v = Potential::sextic(a, units)?;
    let spectrum = solve_spectrum(&v, grid, 1, units)?;
    let ground = spectrum.levels.into_iter().next().ok_or(Qm1dError::InvalidParameter {
        name: "grid (no interior nodes)",
        value: grid.len() as f64,
    })?;
    let phi = quartic_exponential(a, grid)?.normalized()?;
    let overlap = match &ground.state {
        Some(psi) => psi.overlap(&phi)?.abs(),
        None => 0.0,
    };
    Ok(SexticGroundCheck {
        e0: ground.energy,
        overlap,
        ground,
    })
}

fn first_derivative(psi: &[f64], dx: f64) -> Vec<f64> {
    let n = psi.len();
    let mut d = alloc::vec![0.0; n];
    if n < 3 {
        if n == 2 {
            let s = (psi[1] - psi[0]) / dx;
            d.fill(s);
        }
        return d;
    }
    d[0] = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * dx);
    d[n - 1] = (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) / (2.0 * dx);
    for i in 1..n - 1 {
        d[i] = (psi[i + 1] - psi[i - 1]) / (2.0 * dx);
    }
    d
}

use alloc::vec::Vec;

use super::hamiltonian::{solve_spectrum, PARITY_TOLERANCE};
use super::{Potential, Qm1dError};
use crate::math;
use crate::numerics::{trapezoid, Grid, TabulatedState};
use crate::potential::PotentialFn;
use crate::units::Units;

/// Relative reflection asymmetry of a potential tolerated by the audit.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Consecutive levels closer than this (relative) count as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Indefinite,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Even => "even",
            Self::Odd => "odd",
            Self::Indefinite => "indefinite",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParityReport {
    pub parity: Parity,
    /// `min(s₊, s₋)/‖ψ‖`.
    pub measure: f64,
    /// False when the grid is not symmetric about the requested axis; the
    /// label is then `Indefinite` and the measure infinite.
    pub grid_symmetric: bool,
}

/// Labels `state` as even, odd or neither under reflection about `axis`.
pub fn classify_parity(state: &TabulatedState, axis: f64, tol: f64) -> ParityReport {
    let grid = state.grid();
    if !grid.is_symmetric_about(axis) {
        return ParityReport {
            parity: Parity::Indefinite,
            measure: f64::INFINITY,
            grid_symmetric: false,
        };
    }
    let norm = state.norm();
    if norm == 0.0 {
        return ParityReport {
            parity: Parity::Indefinite,
            measure: f64::INFINITY,
            grid_symmetric: true,
        };
    }
    let mut minus = Vec::with_capacity(grid.len());
    let mut plus = Vec::with_capacity(grid.len());
    for (i, &v) in state.values().iter().enumerate() {
        let r = state.interpolate(2.0 * axis - grid.x(i));
        minus.push((v - r) * (v - r));
        plus.push((v + r) * (v + r));
    }
    let s_even = math::sqrt(trapezoid(grid, minus));
    let s_odd = math::sqrt(trapezoid(grid, plus));
    let parity = if s_even <= tol * norm {
        Parity::Even
    } else if s_odd <= tol * norm {
        Parity::Odd
    } else {
        Parity::Indefinite
    };
    ParityReport {
        parity,
        measure: s_even.min(s_odd) / norm,
        grid_symmetric: true,
    }
}

/// `∫ x ψ² dx` for a normalised state.
pub fn expectation_x(state: &TabulatedState) -> Result<f64, Qm1dError> {
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Qm1dError::NotNormalized { norm });
    }
    let grid = state.grid();
    Ok(trapezoid(
        grid,
        state.values().iter().enumerate().map(|(i, v)| grid.x(i) * v * v),
    ))
}

/// `max |V(x) − V(2·axis − x)| / max(1, max |V|)` over the grid nodes.
///
/// Nodes where both values are the same infinity (hard walls) are skipped.
pub fn symmetry_deviation<V: PotentialFn + ?Sized>(v: &V, axis: f64, grid: &Grid) -> f64 {
    let mut worst = 0.0_f64;
    let mut scale = 1.0_f64;
    for x in grid.points() {
        let (a, b) = (v.value(x), v.value(2.0 * axis - x));
        if a == b {
            if a.is_finite() {
                scale = scale.max(a.abs());
            }
            continue;
        }
        if !(a.is_finite() && b.is_finite()) {
            return f64::INFINITY;
        }
        worst = worst.max((a - b).abs());
        scale = scale.max(a.abs()).max(b.abs());
    }
    worst / scale
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AuditLevel {
    pub index: usize,
    pub energy: f64,
    pub parity: Parity,
    pub measure: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParityAudit {
    pub levels: Vec<AuditLevel>,
    /// Index pairs `(i, i + 1)` closer than [`DEGENERACY_TOLERANCE`].
    pub degenerate_pairs: Vec<(usize, usize)>,
    pub passed: bool,
}

/// Checks that the `k` lowest levels of a reflection-symmetric potential are
/// each even or odd and mutually non-degenerate.
pub fn parity_audit(v: &Potential, axis: f64, grid: &Grid, k: usize, units: Units) -> Result<ParityAudit, Qm1dError> {
    let deviation = symmetry_deviation(v, axis, grid);
    if deviation > SYMMETRY_TOLERANCE {
        return Err(Qm1dError::PotentialNotSymmetric {
            max_deviation: deviation,
        });
    }
    let spectrum = solve_spectrum(v, grid, k, units)?;
    let mut levels = Vec::with_capacity(k);
    for level in &spectrum.levels {
        let report = match &level.state {
            Some(state) => classify_parity(state, axis, PARITY_TOLERANCE),
            None => ParityReport {
                parity: Parity::Indefinite,
                measure: f64::INFINITY,
                grid_symmetric: false,
            },
        };
        levels.push(AuditLevel {
            index: level.index,
            energy: level.energy,
            parity: report.parity,
            measure: report.measure,
        });
    }
    let degenerate_pairs: Vec<(usize, usize)> = levels
        .windows(2)
        .filter(|w| {
            let scale = w[0].energy.abs().max(w[1].energy.abs()).max(f64::MIN_POSITIVE);
            (w[1].energy - w[0].energy).abs() <= DEGENERACY_TOLERANCE * scale
        })
        .map(|w| (w[0].index, w[1].index))
        .collect();
    let definite = levels
        .iter()
        .all(|l| l.parity != Parity::Indefinite && l.measure < PARITY_TOLERANCE);
    let passed = definite && degenerate_pairs.is_empty();
    Ok(ParityAudit {
        levels,
        degenerate_pairs,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn trig_functions_have_parity() {
        let grid = Grid::symmetric(1.0, 401).unwrap();
        let c = grid.sample(|x| math::cos(PI * x / 2.0)).unwrap();
        let s = grid.sample(|x| math::sin(PI * x)).unwrap();
        assert_eq!(classify_parity(&c, 0.0, 1e-10).parity, Parity::Even);
        assert_eq!(classify_parity(&s, 0.0, 1e-10).parity, Parity::Odd);
        let mixed = c.combine(1.0, &s, 0.3).unwrap();
        let report = classify_parity(&mixed, 0.0, 1e-6);
        assert_eq!(report.parity, Parity::Indefinite);
        assert!(report.measure > 0.1);
    }

    #[test]
    fn off_axis_reflection() {
        let grid = Grid::new(0.0, 2.0, 201).unwrap();
        let g = grid.sample(|x| math::exp(-(x - 1.0) * (x - 1.0))).unwrap();
        assert_eq!(classify_parity(&g, 1.0, 1e-10).parity, Parity::Even);
        let report = classify_parity(&g, 0.0, 1e-10);
        assert!(!report.grid_symmetric);
        assert_eq!(report.parity, Parity::Indefinite);
    }

    #[test]
    fn one_sided_state_is_indefinite() {
        let grid = Grid::symmetric(2.0, 401).unwrap();
        let left = grid
            .sample(|x| if x < -1.0 { math::sin(PI * (x + 2.0)) } else { 0.0 })
            .unwrap();
        assert_eq!(classify_parity(&left, 0.0, 1e-6).parity, Parity::Indefinite);
    }

    #[test]
    fn position_expectation() {
        let grid = Grid::symmetric(6.0, 1201).unwrap();
        let g = grid
            .sample(|x| math::exp(-(x - 0.5) * (x - 0.5)))
            .unwrap()
            .normalized()
            .unwrap();
        assert!((expectation_x(&g).unwrap() - 0.5).abs() < 1e-8);
        let even = grid.sample(|x| math::exp(-x * x)).unwrap().normalized().unwrap();
        assert!(expectation_x(&even).unwrap().abs() < 1e-12);
        let raw = grid.sample(|x| math::exp(-x * x)).unwrap();
        assert!(matches!(expectation_x(&raw), Err(Qm1dError::NotNormalized { .. })));
    }

    #[test]
    fn audit_rejects_asymmetric_potential() {
        let v = Potential::asymmetric_sinh(1.0, 1.0).unwrap();
        let grid = Grid::symmetric(3.0, 601).unwrap();
        assert!(matches!(
            parity_audit(&v, 0.0, &grid, 4, Units::default()),
            Err(Qm1dError::PotentialNotSymmetric { .. })
        ));
    }

    #[test]
    fn sombrero_audit_alternates() {
        let v = Potential::sombrero(1.0, 1.0).unwrap();
        let grid = Grid::symmetric(3.0, 2000).unwrap();
        let audit = parity_audit(&v, 0.0, &grid, 10, Units::default()).unwrap();
        assert!(audit.passed, "{audit:?}");
        for (i, level) in audit.levels.iter().enumerate() {
            let expected = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(level.parity, expected);
        }
    }
}

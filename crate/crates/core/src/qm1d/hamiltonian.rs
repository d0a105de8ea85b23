use alloc::string::String;
use alloc::vec::Vec;

use super::parity::{classify_parity, symmetry_deviation, Parity, SYMMETRY_TOLERANCE};
use super::{Potential, Qm1dError};
use crate::math;
use crate::numerics::{eig_sym_tridiag, Grid, TabulatedState, TridiagonalOperator};
use crate::potential::PotentialFn;
use crate::units::Units;

/// Asymmetry measure below which a level gets a definite parity label.
pub const PARITY_TOLERANCE: f64 = 1e-6;

/// Relative boundary amplitude above which a spectrum is flagged as leaking.
pub const LEAKAGE_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub index: usize,
    pub energy: f64,
    pub parity: Parity,
    /// `min(s₊, s₋)/‖ψ‖` about the grid midpoint; infinite when the grid is
    /// not symmetric.
    pub asymmetry: f64,
    pub state: Option<TabulatedState>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub potential_descriptor: String,
    pub grid: Grid,
    pub units: Units,
    /// Set when some eigenstate has not decayed at the box edges.
    pub leakage_warning: bool,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Three-point Hamiltonian on the `n − 2` interior nodes of `grid`.
///
/// The potential enters through [`PotentialFn::cell_value`], i.e. the point
/// value for smooth potentials.
pub fn build_hamiltonian<V: PotentialFn + ?Sized>(
    v: &V,
    grid: &Grid,
    units: Units,
) -> Result<TridiagonalOperator, Qm1dError> {
    let units = Units::new(units.hbar, units.mass)?;
    let dx = grid.dx();
    let t = units.hbar * units.hbar / (2.0 * units.mass * dx * dx);
    let n = grid.len() - 2;
    let mut diag = Vec::with_capacity(n);
    for i in 1..=n {
        let x = grid.x(i);
        let vx = v.cell_value(x, dx);
        if !vx.is_finite() {
            return Err(Qm1dError::NonFinitePotential { x });
        }
        diag.push(2.0 * t + vx);
    }
    let offdiag = alloc::vec![-t; n.saturating_sub(1)];
    Ok(TridiagonalOperator::new(diag, offdiag)?)
}

/// The `k` lowest levels of `v` on `grid`, with normalised states and parity
/// labels about the grid midpoint.
pub fn solve_spectrum(v: &Potential, grid: &Grid, k: usize, units: Units) -> Result<Spectrum, Qm1dError> {
    let op = build_hamiltonian(v, grid, units)?;
    let pairs = eig_sym_tridiag(&op, k, true)?;
    let mut levels = Vec::with_capacity(k);
    for (index, pair) in pairs.into_iter().enumerate() {
        let interior = pair.vector.unwrap_or_default();
        let state = pad_and_normalize(grid, &interior)?;
        levels.push(labelled_level(index, pair.value, state, None));
    }
    let leakage_warning = !v.has_hard_walls() && levels.iter().any(leaks);
    Ok(Spectrum {
        levels,
        potential_descriptor: v.descriptor(),
        grid: *grid,
        units,
        leakage_warning,
    })
}

/// Like [`solve_spectrum`], but diagonalises the even and odd sectors
/// separately.
///
/// Requires a grid symmetric about the origin and a reflection-symmetric
/// potential. Parity labels are exact by construction, and nearly degenerate
/// even/odd pairs (splittings far below the eigensolver precision) still come
/// out as clean parity eigenstates.
pub fn solve_spectrum_by_parity(v: &Potential, grid: &Grid, k: usize, units: Units) -> Result<Spectrum, Qm1dError> {
    if (grid.x_min() + grid.x_max()).abs() > 1e-12 * grid.x_max().abs().max(1.0) {
        return Err(Qm1dError::GridNotSymmetric);
    }
    let deviation = symmetry_deviation(v, 0.0, grid);
    if deviation > SYMMETRY_TOLERANCE {
        return Err(Qm1dError::PotentialNotSymmetric {
            max_deviation: deviation,
        });
    }
    let op = build_hamiltonian(v, grid, units)?;
    let n = op.len();
    let t = op.offdiag().first().copied().unwrap_or(0.0);
    let d = op.diag();

    // Half-space operators on the right half of the interior nodes.
    let (even, odd, centre) = if n % 2 == 0 {
        let m = n / 2;
        let mut de = d[m..].to_vec();
        let mut dd = d[m..].to_vec();
        de[0] += t;
        dd[0] -= t;
        let off = alloc::vec![t; m - 1];
        (Some((de, off.clone())), Some((dd, off)), None)
    } else {
        let c = n / 2;
        let de = d[c..].to_vec();
        let mut oe = alloc::vec![t; c];
        if let Some(first) = oe.first_mut() {
            *first = math::sqrt(2.0) * t;
        }
        let odd = (c > 0).then(|| (d[c + 1..].to_vec(), alloc::vec![t; c.saturating_sub(1)]));
        (Some((de, oe)), odd, Some(c))
    };

    let mut found: Vec<(f64, Parity, Vec<f64>)> = Vec::new();
    for (sector, parity) in [(even, Parity::Even), (odd, Parity::Odd)] {
        let Some((diag, off)) = sector else { continue };
        let half = TridiagonalOperator::new(diag, off)?;
        let count = k.min(half.len());
        for pair in eig_sym_tridiag(&half, count, true)? {
            let u = pair.vector.unwrap_or_default();
            let full = unfold(&u, n, centre, parity);
            found.push((pair.value, parity, full));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found.truncate(k);

    let mut levels = Vec::with_capacity(found.len());
    for (index, (energy, parity, interior)) in found.into_iter().enumerate() {
        let state = pad_and_normalize(grid, &interior)?;
        levels.push(labelled_level(index, energy, state, Some(parity)));
    }
    let leakage_warning = !v.has_hard_walls() && levels.iter().any(leaks);
    Ok(Spectrum {
        levels,
        potential_descriptor: v.descriptor(),
        grid: *grid,
        units,
        leakage_warning,
    })
}

fn unfold(u: &[f64], n: usize, centre: Option<usize>, parity: Parity) -> Vec<f64> {
    let sign = if parity == Parity::Odd { -1.0 } else { 1.0 };
    let mut full = alloc::vec![0.0; n];
    match centre {
        None => {
            let m = n / 2;
            for (j, &uj) in u.iter().enumerate() {
                full[m + j] = uj;
                full[m - 1 - j] = sign * uj;
            }
        }
        Some(c) if parity == Parity::Even => {
            full[c] = math::sqrt(2.0) * u[0];
            for (j, &uj) in u.iter().enumerate().skip(1) {
                full[c + j] = uj;
                full[c - j] = uj;
            }
        }
        Some(c) => {
            for (j, &uj) in u.iter().enumerate() {
                full[c + 1 + j] = uj;
                full[c - 1 - j] = -uj;
            }
        }
    }
    full
}

fn labelled_level(index: usize, energy: f64, state: TabulatedState, exact: Option<Parity>) -> Level {
    let report = classify_parity(&state, state.grid().midpoint(), PARITY_TOLERANCE);
    Level {
        index,
        energy,
        parity: exact.unwrap_or(report.parity),
        asymmetry: report.measure,
        state: Some(state),
    }
}

/// Zero-pads interior amplitudes onto the full grid, normalises with the
/// trapezoidal norm and fixes the sign so the leftmost significant lobe is
/// positive.
fn pad_and_normalize(grid: &Grid, interior: &[f64]) -> Result<TabulatedState, Qm1dError> {
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    values.extend_from_slice(interior);
    values.push(0.0);
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = values.iter().find(|v| v.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            values.iter_mut().for_each(|v| *v = -*v);
        }
    }
    Ok(TabulatedState::new(*grid, values)?.normalized()?)
}

fn leaks(level: &Level) -> bool {
    let Some(state) = &level.state else { return false };
    let v = state.values();
    let n = v.len();
    if n < 3 {
        return false;
    }
    let edge = v[1].abs().max(v[n - 2].abs());
    edge > LEAKAGE_THRESHOLD * state.max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn free_hamiltonian_entries() {
        let grid = Grid::new(0.0, 1.0, 11).unwrap();
        let op = build_hamiltonian(&|_: f64| 0.0, &grid, Units::default()).unwrap();
        assert_eq!(op.len(), 9);
        for d in op.diag() {
            assert!((d - 100.0).abs() < 1e-9);
        }
        for o in op.offdiag() {
            assert!((o + 50.0).abs() < 1e-9);
        }
        let shifted = build_hamiltonian(&|_: f64| 3.0, &grid, Units::default()).unwrap();
        for (a, b) in shifted.diag().iter().zip(op.diag()) {
            assert!((a - b - 3.0).abs() < 1e-9);
        }
        assert_eq!(shifted.offdiag(), op.offdiag());
    }

    #[test]
    fn unit_box_levels() {
        let grid = Grid::new(0.0, 1.0, 2000).unwrap();
        let op = build_hamiltonian(&|_: f64| 0.0, &grid, Units::default()).unwrap();
        let pairs = eig_sym_tridiag(&op, 2, false).unwrap();
        let exact = [PI * PI / 2.0, 2.0 * PI * PI];
        for (p, e) in pairs.iter().zip(exact) {
            assert!((p.value - e).abs() < 5e-3 * e);
        }
    }

    #[test]
    fn infinite_potential_inside_box_is_rejected() {
        let grid = Grid::new(-3.0, 3.0, 101).unwrap();
        let v = Potential::piecewise_double_well(1.0, 2.0, 0.5).unwrap();
        assert!(matches!(
            build_hamiltonian(&v, &grid, Units::default()),
            Err(Qm1dError::NonFinitePotential { .. })
        ));
    }

    #[test]
    fn harmonic_oscillator_levels() {
        let v = Potential::harmonic(1.0, 1.0, 0.0).unwrap();
        let grid = Grid::new(-8.0, 8.0, 2000).unwrap();
        let s = solve_spectrum(&v, &grid, 4, Units::default()).unwrap();
        for (i, level) in s.levels.iter().enumerate() {
            assert!((level.energy - (i as f64 + 0.5)).abs() < 1e-3);
            assert_eq!(level.index, i);
            let norm = level.state.as_ref().unwrap().norm();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        assert!(!s.leakage_warning);
        let parities: Vec<_> = s.levels.iter().map(|l| l.parity).collect();
        assert_eq!(parities, [Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]);
    }

    #[test]
    fn narrow_box_leaks() {
        let v = Potential::harmonic(1.0, 1.0, 0.0).unwrap();
        let grid = Grid::new(-2.0, 2.0, 400).unwrap();
        assert!(solve_spectrum(&v, &grid, 2, Units::default()).unwrap().leakage_warning);
    }

    #[test]
    fn double_oscillator_at_zero_separation() {
        // mω²x² is a single oscillator of frequency √2 ω.
        let v = Potential::double_oscillator(1.0, 1.0, 0.0).unwrap();
        let grid = Grid::new(-8.0, 8.0, 3000).unwrap();
        let s = solve_spectrum(&v, &grid, 3, Units::default()).unwrap();
        for (n, level) in s.levels.iter().enumerate() {
            let exact = core::f64::consts::SQRT_2 * (n as f64 + 0.5);
            assert!((level.energy - exact).abs() < 1e-3, "{} vs {exact}", level.energy);
        }
    }

    #[test]
    fn parity_sectors_reproduce_full_solve() {
        let v = Potential::sombrero(1.0, 2.0).unwrap();
        for n in [1200, 1201] {
            let grid = Grid::symmetric(3.5, n).unwrap();
            let full = solve_spectrum(&v, &grid, 6, Units::default()).unwrap();
            let split = solve_spectrum_by_parity(&v, &grid, 6, Units::default()).unwrap();
            for (a, b) in full.levels.iter().zip(&split.levels) {
                assert!((a.energy - b.energy).abs() < 1e-9 * a.energy.abs().max(1.0));
                assert_eq!(a.parity, b.parity);
                let sa = a.state.as_ref().unwrap();
                let sb = b.state.as_ref().unwrap();
                assert!((sa.overlap(sb).unwrap().abs() - 1.0).abs() < 1e-8);
                assert!(b.asymmetry < 1e-12);
            }
        }
    }

    #[test]
    fn parity_sectors_need_symmetry() {
        let v = Potential::asymmetric_sinh(1.0, 1.0).unwrap();
        let grid = Grid::symmetric(3.0, 301).unwrap();
        assert!(matches!(
            solve_spectrum_by_parity(&v, &grid, 2, Units::default()),
            Err(Qm1dError::PotentialNotSymmetric { .. })
        ));
        let shifted = Grid::new(-2.0, 3.0, 301).unwrap();
        let s = Potential::sombrero(1.0, 1.0).unwrap();
        assert_eq!(
            solve_spectrum_by_parity(&s, &shifted, 2, Units::default()),
            Err(Qm1dError::GridNotSymmetric)
        );
    }
}

use alloc::vec::Vec;

use super::components::{allowed_components, classify_component, Component, SymmetryClass};
use super::ClassicalError;
use crate::math;
use crate::numerics::{integrate_hamiltonian_with, PhaseState, Scheme};
use crate::potential::PotentialFn;

/// One orbit of a phase portrait.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub energy: f64,
    pub points: Vec<PhaseState>,
    pub symmetry_class: SymmetryClass,
    /// The allowed interval the orbit explores; infinite ends are unbounded.
    pub component_interval: (f64, f64),
}

impl Trajectory {
    /// `max |H − E| / max(|E|, 1)` along the orbit.
    pub fn energy_drift<V: PotentialFn + ?Sized>(&self, v: &V, mass: f64) -> f64 {
        let scale = self.energy.abs().max(1.0);
        self.points
            .iter()
            .map(|s| (hamiltonian(v, mass, s) - self.energy).abs() / scale)
            .fold(0.0, f64::max)
    }
}

/// One allowed component at one energy, with its orbit or the error that
/// stopped it.
#[derive(Clone, Debug, PartialEq)]
pub struct PortraitEntry {
    pub energy: f64,
    pub component: Option<Component>,
    pub trajectory: Result<Trajectory, ClassicalError>,
}

/// `p²/2m + V(x)`.
pub fn hamiltonian<V: PotentialFn + ?Sized>(v: &V, mass: f64, s: &PhaseState) -> f64 {
    s.p * s.p / (2.0 * mass) + v.value(s.x)
}

/// Integrates one orbit per allowed component for each energy.
///
/// Bounded orbits start at their left turning point with `p = 0`; components
/// unbounded on the left start at the right turning point, and those
/// unbounded on both sides start at the centre of `scan`, which is also the
/// reflection axis used for the symmetry class. Integration uses the
/// fourth-order symplectic composition. Energies without any allowed point
/// yield a single entry carrying [`ClassicalError::EnergyBelowMinimum`].
pub fn phase_portrait<V: PotentialFn + ?Sized>(
    v: &V,
    mass: f64,
    energies: &[f64],
    scan: (f64, f64),
    dt: f64,
    steps: usize,
) -> Result<Vec<PortraitEntry>, ClassicalError> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(ClassicalError::InvalidParameter {
            name: "mass",
            value: mass,
        });
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(ClassicalError::InvalidParameter { name: "dt", value: dt });
    }
    let axis = 0.5 * (scan.0 + scan.1);
    let mut out = Vec::new();
    for &energy in energies {
        let components = allowed_components(v, energy, scan)?;
        if components.is_empty() {
            out.push(PortraitEntry {
                energy,
                component: None,
                trajectory: Err(ClassicalError::EnergyBelowMinimum { energy, x0: axis }),
            });
        }
        for c in components {
            let trajectory = orbit(v, mass, energy, c, axis, scan, dt, steps);
            out.push(PortraitEntry {
                energy,
                component: Some(c),
                trajectory,
            });
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn orbit<V: PotentialFn + ?Sized>(
    v: &V,
    mass: f64,
    energy: f64,
    c: Component,
    axis: f64,
    scan: (f64, f64),
    dt: f64,
    steps: usize,
) -> Result<Trajectory, ClassicalError> {
    let symmetry_class = classify_component(v, energy, c, axis, scan)?;
    let x0 = if c.lo.is_finite() {
        c.lo
    } else if c.hi.is_finite() {
        c.hi
    } else {
        axis
    };
    let p0 = math::sqrt((2.0 * mass * (energy - v.value(x0))).max(0.0));
    let points = integrate_hamiltonian_with(
        Scheme::Yoshida4,
        |x| -v.slope(x),
        mass,
        PhaseState::new(x0, p0),
        dt,
        steps,
    )?;
    Ok(Trajectory {
        energy,
        points,
        symmetry_class,
        component_interval: (c.lo, c.hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm1d::Potential;

    #[test]
    fn sombrero_portrait_topology() {
        let v = Potential::sombrero(1.0, 1.0).unwrap();
        let energies = [-0.1, 0.0, 0.5];
        let entries = phase_portrait(&v, 1.0, &energies, (-3.0, 3.0), 1e-3, 10_000).unwrap();
        let count = |e: f64| entries.iter().filter(|x| x.energy == e).count();
        assert_eq!(count(-0.1), 2);
        assert_eq!(count(0.0), 1);
        assert_eq!(count(0.5), 1);
        for entry in &entries {
            let t = entry.trajectory.as_ref().unwrap();
            assert!(
                t.energy_drift(&v, 1.0) < 1e-6,
                "E={} drift {}",
                t.energy,
                t.energy_drift(&v, 1.0)
            );
            let (lo, hi) = t.component_interval;
            for s in &t.points {
                assert!(s.x >= lo - 1e-6 && s.x <= hi + 1e-6);
            }
            let expected = if entry.energy < 0.0 {
                SymmetryClass::Asymmetric
            } else if entry.energy == 0.0 {
                SymmetryClass::Separatrix
            } else {
                SymmetryClass::Symmetric
            };
            assert_eq!(t.symmetry_class, expected);
        }
    }

    #[test]
    fn empty_and_forbidden_energies() {
        let v = Potential::sombrero(1.0, 1.0).unwrap();
        assert!(phase_portrait(&v, 1.0, &[], (-3.0, 3.0), 1e-3, 10).unwrap().is_empty());
        let below = phase_portrait(&v, 1.0, &[-1.0], (-3.0, 3.0), 1e-3, 10).unwrap();
        assert_eq!(below.len(), 1);
        assert!(matches!(
            below[0].trajectory,
            Err(ClassicalError::EnergyBelowMinimum { .. })
        ));
    }

    #[test]
    fn runaway_orbit_reports_error_without_aborting() {
        let hill = |x: f64| -x * x * x * x;
        let entries = phase_portrait(&hill, 1.0, &[1.0, -0.5], (-2.0, 2.0), 0.1, 2000).unwrap();
        assert!(entries.iter().any(|e| e.trajectory.is_err()));
        assert_eq!(entries.len(), 3);
    }

    #[test]
    fn time_reversal() {
        let v = Potential::sombrero(1.0, 1.0).unwrap();
        let start = PhaseState::new(-1.2, 0.3);
        let fwd = integrate_hamiltonian_with(Scheme::Yoshida4, |x| -v.slope(x), 1.0, start, 1e-3, 10_000).unwrap();
        let end = fwd[fwd.len() - 1];
        let back = integrate_hamiltonian_with(
            Scheme::Yoshida4,
            |x| -v.slope(x),
            1.0,
            PhaseState::new(end.x, -end.p),
            1e-3,
            10_000,
        )
        .unwrap();
        let last = back[back.len() - 1];
        assert!((last.x - start.x).abs() < 1e-6 && (last.p + start.p).abs() < 1e-6);
    }
}

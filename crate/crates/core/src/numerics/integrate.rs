use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

/// A point `(x, p)` of phase space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseState {
    pub x: f64,
    pub p: f64,
}

impl PhaseState {
    pub const fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite()
    }
}

/// Symplectic update rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scheme {
    /// Position Verlet (drift, kick, drift). Second order.
    #[default]
    Leapfrog,
    /// Triple-jump composition of three leapfrog steps. Fourth order, still
    /// symplectic and time-reversible.
    Yoshida4,
}

/// Integrates `ẋ = p/m`, `ṗ = force(x)` with the leapfrog scheme.
///
/// Returns `steps + 1` states, the first being `state0`.
pub fn integrate_hamiltonian<F>(
    force: F,
    mass: f64,
    state0: PhaseState,
    dt: f64,
    steps: usize,
) -> Result<Vec<PhaseState>, NumericsError>
where
    F: Fn(f64) -> f64,
{
    integrate_hamiltonian_with(Scheme::Leapfrog, force, mass, state0, dt, steps)
}

pub fn integrate_hamiltonian_with<F>(
    scheme: Scheme,
    force: F,
    mass: f64,
    state0: PhaseState,
    dt: f64,
    steps: usize,
) -> Result<Vec<PhaseState>, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(mass.is_finite() && mass > 0.0) {
        return Err(NumericsError::InvalidArgument {
            reason: "mass must be positive",
        });
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(NumericsError::InvalidArgument {
            reason: "time step must be positive",
        });
    }
    if !state0.is_finite() {
        return Err(NumericsError::NonFinite { step: 0 });
    }

    let mut out = Vec::with_capacity(steps + 1);
    out.push(state0);
    let mut s = state0;
    for step in 1..=steps {
        s = match scheme {
            Scheme::Leapfrog => leapfrog(&force, mass, s, dt),
            Scheme::Yoshida4 => {
                let (w1, w0) = yoshida_weights();
                let s = leapfrog(&force, mass, s, w1 * dt);
                let s = leapfrog(&force, mass, s, w0 * dt);
                leapfrog(&force, mass, s, w1 * dt)
            }
        };
        if !s.is_finite() {
            return Err(NumericsError::NonFinite { step });
        }
        out.push(s);
    }
    Ok(out)
}

#[inline]
fn leapfrog<F: Fn(f64) -> f64>(force: &F, mass: f64, s: PhaseState, dt: f64) -> PhaseState {
    let x_half = s.x + 0.5 * dt * s.p / mass;
    let p = s.p + dt * force(x_half);
    PhaseState {
        x: x_half + 0.5 * dt * p / mass,
        p,
    }
}

fn yoshida_weights() -> (f64, f64) {
    let c = math::cbrt(2.0);
    let w1 = 1.0 / (2.0 - c);
    (w1, -c * w1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic_energy(s: &PhaseState) -> f64 {
        0.5 * (s.x * s.x + s.p * s.p)
    }

    #[test]
    fn harmonic_oscillator_tracks_cosine() {
        let path = integrate_hamiltonian(|x| -x, 1.0, PhaseState::new(1.0, 0.0), 1e-3, 10_000).unwrap();
        assert_eq!(path.len(), 10_001);
        let last = path.last().unwrap();
        assert!((last.x - math::cos(10.0)).abs() < 1e-4);
        assert!((last.p + math::sin(10.0)).abs() < 1e-4);
        let e0 = harmonic_energy(&path[0]);
        let worst = path
            .iter()
            .map(|s| (harmonic_energy(s) - e0).abs() / e0)
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "relative energy error {worst}");
    }

    #[test]
    fn free_particle_moves_uniformly() {
        let path = integrate_hamiltonian(|_| 0.0, 2.0, PhaseState::new(0.0, 1.0), 0.25, 8).unwrap();
        for (i, s) in path.iter().enumerate() {
            assert_eq!(s.p, 1.0);
            assert!((s.x - 0.125 * i as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn leapfrog_is_second_order() {
        // Global error at t = 1 against the exact harmonic solution.
        let err = |dt: f64| {
            let steps = (1.0 / dt).round() as usize;
            let path = integrate_hamiltonian(|x| -x, 1.0, PhaseState::new(1.0, 0.0), dt, steps).unwrap();
            (path.last().unwrap().x - math::cos(1.0)).abs()
        };
        let ratio = err(0.01) / err(0.005);
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn yoshida_is_fourth_order() {
        let err = |dt: f64| {
            let steps = (1.0 / dt).round() as usize;
            let path = integrate_hamiltonian_with(Scheme::Yoshida4, |x| -x, 1.0, PhaseState::new(1.0, 0.0), dt, steps)
                .unwrap();
            (path.last().unwrap().x - math::cos(1.0)).abs()
        };
        let ratio = err(0.02) / err(0.01);
        assert!((ratio - 16.0).abs() < 1.5, "ratio {ratio}");
    }

    #[test]
    fn sombrero_energy_stays_bounded() {
        // H = p²/2 + x⁴ − x², E = 0.5, started at the origin.
        let h = |s: &PhaseState| 0.5 * s.p * s.p + s.x.powi(4) - s.x * s.x;
        let force = |x: f64| 2.0 * x - 4.0 * x * x * x;
        let path = integrate_hamiltonian(force, 1.0, PhaseState::new(0.0, 1.0), 1e-3, 10_000).unwrap();
        let dev: Vec<f64> = path.iter().map(|s| (h(s) - 0.5).abs() / 0.5).collect();
        let first = dev[..5_000].iter().cloned().fold(0.0, f64::max);
        let second = dev[5_000..].iter().cloned().fold(0.0, f64::max);
        // The leapfrog error oscillates at O(dt²) without secular growth.
        assert!(first < 5e-6 && second < 5e-6, "{first} {second}");
        assert!(second < 1.5 * first);

        let path =
            integrate_hamiltonian_with(Scheme::Yoshida4, force, 1.0, PhaseState::new(0.0, 1.0), 1e-3, 10_000).unwrap();
        let worst = path.iter().map(|s| (h(s) - 0.5).abs() / 0.5).fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn runaway_is_reported() {
        let err = integrate_hamiltonian(|x| x * x * x * x, 1.0, PhaseState::new(10.0, 0.0), 0.1, 1000).unwrap_err();
        assert!(matches!(err, NumericsError::NonFinite { .. }));
    }

    #[test]
    fn invalid_arguments() {
        let s = PhaseState::new(0.0, 0.0);
        assert!(integrate_hamiltonian(|x| -x, 0.0, s, 0.1, 1).is_err());
        assert!(integrate_hamiltonian(|x| -x, 1.0, s, -0.1, 1).is_err());
    }
}

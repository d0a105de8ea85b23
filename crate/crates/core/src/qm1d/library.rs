use alloc::format;
use alloc::string::String;

use super::{require_positive, Qm1dError};
use crate::math;
use crate::numerics::TabulatedState;
use crate::potential::PotentialFn;
use crate::units::Units;

/// The potentials the models are built from.
#[derive(Clone, Debug, PartialEq)]
pub enum Potential {
    /// `λx⁴ − μx²`.
    Sombrero { lambda: f64, mu: f64 },
    /// `(ħ²/2m)(16a²x⁶ − 12a x²)`, whose zero-energy ground state is `e^{−a x⁴}`.
    Sextic { a: f64, units: Units },
    /// `½ m ω² x² − offset`.
    Harmonic { mass: f64, omega: f64, offset: f64 },
    /// `m ω² (|x| − a)²`, taken literally (no ½).
    DoubleOscillator { mass: f64, omega: f64, a: f64 },
    /// Height `alpha` on `|x| ≤ b`, zero on `b < |x| < a`, infinite beyond.
    /// The infinite walls are the Dirichlet box of a grid spanning `[−a, a]`.
    PiecewiseDoubleWell { alpha: f64, a: f64, b: f64 },
    /// `ν sinh²(αx − 3) sinh²((1 + αx)/20)`: two degenerate minima and no
    /// reflection symmetry.
    AsymmetricSinh { nu: f64, alpha: f64 },
    /// Linear interpolation of sampled values.
    Tabulated(TabulatedState),
}

impl Potential {
    pub fn sombrero(lambda: f64, mu: f64) -> Result<Self, Qm1dError> {
        Ok(Self::Sombrero {
            lambda: require_positive("lambda", lambda)?,
            mu: require_positive("mu", mu)?,
        })
    }

    pub fn sextic(a: f64, units: Units) -> Result<Self, Qm1dError> {
        let units = Units::new(units.hbar, units.mass)?;
        Ok(Self::Sextic {
            a: require_positive("a", a)?,
            units,
        })
    }

    pub fn harmonic(mass: f64, omega: f64, offset: f64) -> Result<Self, Qm1dError> {
        if !offset.is_finite() {
            return Err(Qm1dError::InvalidParameter {
                name: "offset",
                value: offset,
            });
        }
        Ok(Self::Harmonic {
            mass: require_positive("mass", mass)?,
            omega: require_positive("omega", omega)?,
            offset,
        })
    }

    /// `a = 0` is allowed and gives a single well of frequency `√2 ω`.
    pub fn double_oscillator(mass: f64, omega: f64, a: f64) -> Result<Self, Qm1dError> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Qm1dError::InvalidParameter { name: "a", value: a });
        }
        Ok(Self::DoubleOscillator {
            mass: require_positive("mass", mass)?,
            omega: require_positive("omega", omega)?,
            a,
        })
    }

    pub fn piecewise_double_well(alpha: f64, a: f64, b: f64) -> Result<Self, Qm1dError> {
        require_positive("alpha", alpha)?;
        require_positive("a", a)?;
        require_positive("b", b)?;
        if b >= a {
            return Err(Qm1dError::InvalidParameter {
                name: "b (must be below a)",
                value: b,
            });
        }
        Ok(Self::PiecewiseDoubleWell { alpha, a, b })
    }

    pub fn asymmetric_sinh(nu: f64, alpha: f64) -> Result<Self, Qm1dError> {
        Ok(Self::AsymmetricSinh {
            nu: require_positive("nu", nu)?,
            alpha: require_positive("alpha", alpha)?,
        })
    }

    /// Short human-readable description, used in reports.
    pub fn descriptor(&self) -> String {
        match self {
            Self::Sombrero { lambda, mu } => format!("sombrero(lambda={lambda}, mu={mu})"),
            Self::Sextic { a, .. } => format!("sextic(a={a})"),
            Self::Harmonic { mass, omega, offset } => {
                format!("harmonic(m={mass}, omega={omega}, offset={offset})")
            }
            Self::DoubleOscillator { mass, omega, a } => {
                format!("double-oscillator(m={mass}, omega={omega}, a={a})")
            }
            Self::PiecewiseDoubleWell { alpha, a, b } => {
                format!("piecewise-double-well(alpha={alpha}, a={a}, b={b})")
            }
            Self::AsymmetricSinh { nu, alpha } => format!("asymmetric-sinh(nu={nu}, alpha={alpha})"),
            Self::Tabulated(s) => format!("tabulated({})", s.label().unwrap_or("unnamed")),
        }
    }

    /// The reflection axis of the analytic families, when they have one.
    pub fn symmetry_axis(&self) -> Option<f64> {
        match self {
            Self::AsymmetricSinh { .. } | Self::Tabulated(_) => None,
            _ => Some(0.0),
        }
    }

    /// Whether the potential has physical hard walls at the box edges, so that
    /// the boundary-amplitude leakage check does not apply.
    pub fn has_hard_walls(&self) -> bool {
        matches!(self, Self::PiecewiseDoubleWell { .. })
    }
}

impl PotentialFn for Potential {
    fn value(&self, x: f64) -> f64 {
        match *self {
            Self::Sombrero { lambda, mu } => {
                let x2 = x * x;
                lambda * x2 * x2 - mu * x2
            }
            Self::Sextic { a, units } => {
                let x2 = x * x;
                units.kinetic_scale() * (16.0 * a * a * x2 * x2 * x2 - 12.0 * a * x2)
            }
            Self::Harmonic { mass, omega, offset } => 0.5 * mass * omega * omega * x * x - offset,
            Self::DoubleOscillator { mass, omega, a } => {
                let d = x.abs() - a;
                mass * omega * omega * d * d
            }
            Self::PiecewiseDoubleWell { alpha, a, b } => {
                let ax = x.abs();
                if ax <= b {
                    alpha
                } else if ax < a {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Self::AsymmetricSinh { nu, alpha } => {
                let s1 = math::sinh(alpha * x - 3.0);
                let s2 = math::sinh((1.0 + alpha * x) / 20.0);
                nu * s1 * s1 * s2 * s2
            }
            Self::Tabulated(ref s) => s.interpolate(x),
        }
    }

    fn slope(&self, x: f64) -> f64 {
        match *self {
            Self::Sombrero { lambda, mu } => 4.0 * lambda * x * x * x - 2.0 * mu * x,
            Self::Sextic { a, units } => {
                let x2 = x * x;
                units.kinetic_scale() * (96.0 * a * a * x2 * x2 * x - 24.0 * a * x)
            }
            Self::Harmonic { mass, omega, .. } => mass * omega * omega * x,
            Self::DoubleOscillator { mass, omega, a } => 2.0 * mass * omega * omega * (x.abs() - a) * x.signum(),
            Self::PiecewiseDoubleWell { .. } => 0.0,
            Self::AsymmetricSinh { nu, alpha } => {
                let u = alpha * x - 3.0;
                let w = (1.0 + alpha * x) / 20.0;
                let (s1, c1) = (math::sinh(u), math::cosh(u));
                let (s2, c2) = (math::sinh(w), math::cosh(w));
                nu * (2.0 * alpha * s1 * c1 * s2 * s2 + s1 * s1 * 2.0 * s2 * c2 * alpha / 20.0)
            }
            Self::Tabulated(_) => {
                let h = 1e-4 * x.abs().max(1.0);
                (self.value(x + h) - self.value(x - h)) / (2.0 * h)
            }
        }
    }

    /// Exact cell average for the step potential; the point value otherwise.
    ///
    /// Averaging places the discrete step at `|x| = b` exactly, which turns
    /// the O(dx) eigenvalue error of point sampling into O(dx²).
    fn cell_value(&self, x: f64, dx: f64) -> f64 {
        match *self {
            Self::PiecewiseDoubleWell { alpha, a, b } => {
                if x.abs() >= a {
                    return f64::INFINITY;
                }
                let lo = (x - 0.5 * dx).max(-b);
                let hi = (x + 0.5 * dx).min(b);
                alpha * (hi - lo).max(0.0) / dx
            }
            _ => self.value(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_of_each_family() {
        let s = Potential::sombrero(1.0, 1.0).unwrap();
        assert_eq!(s.value(0.0), 0.0);
        assert!((s.value(core::f64::consts::FRAC_1_SQRT_2) + 0.25).abs() < 1e-15);

        let x6 = Potential::sextic(1.0, Units::default()).unwrap();
        assert_eq!(x6.value(1.0), 0.5 * (16.0 - 12.0));

        let d = Potential::double_oscillator(1.0, 2.0, 1.5).unwrap();
        assert_eq!(d.value(1.5), 0.0);
        assert_eq!(d.value(-1.5), 0.0);
        assert_eq!(d.value(0.0), 4.0 * 2.25);

        let w = Potential::piecewise_double_well(10.0, 2.0, 0.5).unwrap();
        assert_eq!(w.value(0.5), 10.0);
        assert_eq!(w.value(-0.2), 10.0);
        assert_eq!(w.value(1.0), 0.0);
        assert_eq!(w.value(2.0), f64::INFINITY);

        let u = Potential::asymmetric_sinh(1.0, 1.0).unwrap();
        assert_eq!(u.value(3.0), 0.0);
        assert_eq!(u.value(-1.0), 0.0);
    }

    #[test]
    fn analytic_slopes_match_differences() {
        let units = Units::new(1.3, 0.7).unwrap();
        let family = [
            Potential::sombrero(1.5, 0.5).unwrap(),
            Potential::sextic(0.8, units).unwrap(),
            Potential::harmonic(2.0, 1.5, 0.3).unwrap(),
            Potential::double_oscillator(1.0, 1.0, 0.7).unwrap(),
            Potential::asymmetric_sinh(0.5, 1.2).unwrap(),
        ];
        for v in &family {
            for &x in &[-1.3, -0.4, 0.25, 1.1] {
                let h = 1e-5;
                let fd = (v.value(x + h) - v.value(x - h)) / (2.0 * h);
                assert!((v.slope(x) - fd).abs() <= 1e-5 * fd.abs().max(1.0), "{v:?} at {x}");
            }
        }
    }

    #[test]
    fn cell_average_of_step() {
        let w = Potential::piecewise_double_well(8.0, 2.0, 0.5).unwrap();
        assert_eq!(w.cell_value(0.0, 0.1), 8.0);
        assert_eq!(w.cell_value(1.0, 0.1), 0.0);
        assert!((w.cell_value(0.5, 0.1) - 4.0).abs() < 1e-12);
        assert!((w.cell_value(-0.52, 0.1) - 8.0 * 0.3).abs() < 1e-12);
    }

    #[test]
    fn parameter_validation() {
        assert!(Potential::sombrero(-1.0, 1.0).is_err());
        assert!(Potential::piecewise_double_well(1.0, 1.0, 1.0).is_err());
        assert!(Potential::double_oscillator(1.0, 1.0, -0.1).is_err());
        assert!(Potential::sextic(1.0, Units { hbar: 0.0, mass: 1.0 }).is_err());
    }
}

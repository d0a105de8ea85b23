use core::fmt;

/// Reduced Planck constant and particle mass, in whatever unit system the
/// caller works in. The default is ħ = m = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub mass: f64,
}

impl Units {
    pub fn new(hbar: f64, mass: f64) -> Result<Self, UnitsError> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(UnitsError::NonPositive {
                name: "hbar",
                value: hbar,
            });
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(UnitsError::NonPositive {
                name: "mass",
                value: mass,
            });
        }
        Ok(Self { hbar, mass })
    }

    /// ħ²/2m, the prefactor of the kinetic term.
    #[inline]
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

impl Default for Units {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnitsError {
    NonPositive { name: &'static str, value: f64 },
}

impl fmt::Display for UnitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositive { name, value } => {
                write!(f, "{name} must be finite and positive, got {value}")
            }
        }
    }
}

impl core::error::Error for UnitsError {}

use alloc::string::String;
use alloc::vec::Vec;

use super::quadrature::{inner_product, trapezoid};
use super::NumericsError;
use crate::math;

/// A uniform grid on `[x_min, x_max]` including both end points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, NumericsError> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(NumericsError::InvalidGrid {
                reason: "bounds must be finite",
            });
        }
        if x_min >= x_max {
            return Err(NumericsError::InvalidGrid {
                reason: "x_min must be below x_max",
            });
        }
        if n_points < 3 {
            return Err(NumericsError::InvalidGrid {
                reason: "at least 3 points are required",
            });
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// A grid symmetric about the origin.
    pub fn symmetric(half_width: f64, n_points: usize) -> Result<Self, NumericsError> {
        Self::new(-half_width, half_width, n_points)
    }

    #[inline]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.x_min + self.x_max)
    }

    /// True when reflection about `axis` maps the grid onto itself to within
    /// half a spacing.
    pub fn is_symmetric_about(&self, axis: f64) -> bool {
        (self.midpoint() - axis).abs() <= 0.5 * self.dx()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }

    /// Samples `f` at every grid point.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Result<TabulatedState, NumericsError> {
        TabulatedState::new(*self, self.points().map(f).collect())
    }
}

/// A real function sampled on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedState {
    grid: Grid,
    values: Vec<f64>,
    label: Option<String>,
}

impl TabulatedState {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, NumericsError> {
        if values.len() != grid.len() {
            return Err(NumericsError::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::InvalidArgument {
                reason: "samples must be finite",
            });
        }
        Ok(Self {
            grid,
            values,
            label: None,
        })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: alloc::vec![0.0; grid.len()],
            label: None,
        }
    }

    #[must_use]
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `sqrt(∫ψ² dx)` by the trapezoidal rule.
    pub fn norm(&self) -> f64 {
        math::sqrt(trapezoid(&self.grid, self.values.iter().map(|v| v * v)))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Returns the state scaled to unit norm.
    pub fn normalized(&self) -> Result<Self, NumericsError> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(NumericsError::InvalidArgument {
                reason: "cannot normalise a zero state",
            });
        }
        Ok(self.scaled(1.0 / n))
    }

    #[must_use]
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
            label: self.label.clone(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self, NumericsError> {
        if self.grid != other.grid {
            return Err(NumericsError::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| a * u + b * v)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
            label: None,
        })
    }

    pub fn overlap(&self, other: &Self) -> Result<f64, NumericsError> {
        inner_product(self, other)
    }

    /// Linear interpolation; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> f64 {
        if !self.grid.contains(x) {
            return 0.0;
        }
        let t = (x - self.grid.x_min) / self.grid.dx();
        let i = (math::floor(t) as usize).min(self.grid.len() - 2);
        let w = t - i as f64;
        (1.0 - w) * self.values[i] + w * self.values[i + 1]
    }
}

//! The one abstraction every model shares: a real potential on the line.

/// A scalar potential `V(x)`.
///
/// Any `Fn(f64) -> f64` is a potential. Library potentials override
/// [`slope`](PotentialFn::slope) with the analytic derivative and, when they
/// are discontinuous, [`cell_value`](PotentialFn::cell_value) with the exact
/// cell average used by the finite-difference Hamiltonian.
pub trait PotentialFn {
    fn value(&self, x: f64) -> f64;

    /// `dV/dx`. The default is a fourth-order central difference.
    fn slope(&self, x: f64) -> f64 {
        let h = 1e-4 * x.abs().max(1.0);
        (self.value(x - 2.0 * h) - 8.0 * self.value(x - h) + 8.0 * self.value(x + h) - self.value(x + 2.0 * h))
            / (12.0 * h)
    }

    /// Mean of `V` over `[x - dx/2, x + dx/2]`.
    fn cell_value(&self, x: f64, dx: f64) -> f64 {
        let _ = dx;
        self.value(x)
    }
}

impl<F: Fn(f64) -> f64> PotentialFn for F {
    #[inline]
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

use super::{Grid, NumericsError, TabulatedState};

/// Composite trapezoidal rule for samples on `grid`.
pub fn trapezoid(grid: &Grid, samples: impl IntoIterator<Item = f64>) -> f64 {
    let n = grid.len();
    let mut sum = 0.0;
    for (i, v) in samples.into_iter().enumerate() {
        sum += if i == 0 || i + 1 == n { 0.5 * v } else { v };
    }
    sum * grid.dx()
}

/// `∫ f·g dx` by the trapezoidal rule.
pub fn inner_product(f: &TabulatedState, g: &TabulatedState) -> Result<f64, NumericsError> {
    if f.grid() != g.grid() {
        return Err(NumericsError::GridMismatch);
    }
    Ok(trapezoid(
        f.grid(),
        f.values().iter().zip(g.values()).map(|(a, b)| a * b),
    ))
}

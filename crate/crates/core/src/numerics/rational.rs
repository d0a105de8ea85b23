use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

/// A convergent `p/q` of a real number together with its distance from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RationalApprox {
    pub p: i64,
    pub q: u64,
    pub value: f64,
    pub error: f64,
}

impl RationalApprox {
    pub fn as_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Continued-fraction convergents of `x` with denominators up to `q_max`.
///
/// Denominators ascend and every entry is in lowest terms. The expansion
/// stops early once a convergent reproduces `x` exactly, so exactly rational
/// inputs terminate with error zero. The last entry is the best approximation
/// of `x` among fractions with denominator at most `q_max`.
pub fn best_rational_approximations(x: f64, q_max: u64) -> Result<Vec<RationalApprox>, NumericsError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(NumericsError::InvalidArgument {
            reason: "x must be positive and finite",
        });
    }
    if q_max == 0 {
        return Err(NumericsError::InvalidArgument {
            reason: "q_max must be at least 1",
        });
    }

    let mut out = Vec::new();
    // h/k recurrences: (h₋₁, k₋₁) = (1, 0), (h₋₂, k₋₂) = (0, 1).
    let (mut h_prev, mut k_prev): (i128, i128) = (1, 0);
    let (mut h_prev2, mut k_prev2): (i128, i128) = (0, 1);
    let mut rest = x;
    loop {
        let a = math::floor(rest);
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let (Some(h), Some(k)) = (
            a.checked_mul(h_prev).and_then(|v| v.checked_add(h_prev2)),
            a.checked_mul(k_prev).and_then(|v| v.checked_add(k_prev2)),
        ) else {
            break;
        };
        if k > i128::from(q_max) || h > i128::from(i64::MAX) {
            break;
        }
        let approx = h as f64 / k as f64;
        let error = (x - approx).abs();
        out.push(RationalApprox {
            p: h as i64,
            q: k as u64,
            value: x,
            error,
        });
        if error == 0.0 {
            break;
        }
        let frac = rest - a as f64;
        if frac <= 0.0 {
            break;
        }
        rest = 1.0 / frac;
        h_prev2 = h_prev;
        k_prev2 = k_prev;
        h_prev = h;
        k_prev = k;
    }
    Ok(out)
}

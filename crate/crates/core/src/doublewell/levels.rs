use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{barrier_log_derivative, residual_unchecked, DoubleWellError, WellParams};
use crate::math;
use crate::numerics::find_root_bracketed;
use crate::qm1d::Parity;
use crate::units::Units;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WellLevel {
    /// Pair index, from 1.
    pub n: usize,
    pub parity: Parity,
    pub energy: f64,
    pub below_barrier: bool,
}

/// Sub-barrier levels, ascending, at most `n_max` of each parity.
///
/// On each branch `θ = k(a−b) ∈ (jπ, (j+1)π)` the matching function falls
/// monotonically from `+∞` (or `1/(a−b)` + barrier term when `j = 0`) to
/// `−∞`, so there is at most one root per branch and parity; the last branch
/// is cut at `E = α`.
pub fn levels_below_barrier(params: &WellParams, n_max: usize) -> Result<Vec<WellLevel>, DoubleWellError> {
    let alpha = params.alpha()?;
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        out.extend(roots_of_parity(params, alpha, parity, n_max)?);
    }
    out.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    Ok(out)
}

fn roots_of_parity(
    params: &WellParams,
    alpha: f64,
    parity: Parity,
    n_max: usize,
) -> Result<Vec<WellLevel>, DoubleWellError> {
    let width = params.well_width();
    let units = params.units;
    let energy_of = |theta: f64| {
        let k = theta / width;
        units.hbar * units.hbar * k * k / (2.0 * units.mass)
    };
    let theta_alpha = params.wavenumber(alpha) * width;
    let g = |theta: f64| residual_unchecked(energy_of(theta), parity, params, alpha);

    let mut out = Vec::new();
    for j in 0..n_max {
        let start = j as f64 * PI;
        if start >= theta_alpha {
            break;
        }
        let pole = (j + 1) as f64 * PI;
        let lo = start + 1e-12 * start.max(1.0);
        let (hi, g_hi) = if pole < theta_alpha {
            let hi = pole * (1.0 - 1e-15);
            (hi, g(hi))
        } else {
            (theta_alpha, g(theta_alpha))
        };
        if g_hi.is_nan() || g_hi >= 0.0 {
            break;
        }
        let theta = find_root_bracketed(g, lo, hi, 1e-15 * hi)?;
        let energy = energy_of(theta);
        if energy >= alpha {
            break;
        }
        out.push(WellLevel {
            n: j + 1,
            parity,
            energy,
            below_barrier: true,
        });
    }
    Ok(out)
}

/// The even and odd members of pair `n`, when both lie below the barrier.
pub fn level_pair(params: &WellParams, n: usize) -> Result<(WellLevel, WellLevel), DoubleWellError> {
    let alpha = params.alpha()?;
    if n == 0 {
        return Err(DoubleWellError::InvalidParameter { name: "n", value: 0.0 });
    }
    let even = roots_of_parity(params, alpha, Parity::Even, n)?;
    let odd = roots_of_parity(params, alpha, Parity::Odd, n)?;
    match (even.get(n - 1), odd.get(n - 1)) {
        (Some(e), Some(o)) => Ok((*e, *o)),
        _ => Err(DoubleWellError::MissingPair { alpha, n }),
    }
}

/// `π²ħ²n²/(2m(a−b)²)`, the doubly degenerate levels of the infinite barrier.
pub fn limit_levels(a: f64, b: f64, units: Units, n: usize) -> Result<f64, DoubleWellError> {
    let params = WellParams::new(a, b, super::Barrier::Infinite, units)?;
    if n == 0 {
        return Err(DoubleWellError::InvalidParameter { name: "n", value: 0.0 });
    }
    let width = params.well_width();
    let nn = n as f64;
    Ok(PI * PI * units.hbar * units.hbar * nn * nn / (2.0 * units.mass * width * width))
}

/// The barrier height above which the first level drops below the barrier.
///
/// Bisects on the existence of a sub-barrier root, which switches on when
/// the even residual at the barrier top, `g(α⁻)`, turns negative.
pub fn threshold_alpha(a: f64, b: f64, units: Units) -> Result<f64, DoubleWellError> {
    let exists = |alpha: f64| -> Result<bool, DoubleWellError> {
        let p = WellParams::new(a, b, super::Barrier::Finite(alpha), units)?;
        Ok(residual_unchecked(alpha, Parity::Even, &p, alpha) < 0.0)
    };
    let scale = limit_levels(a, b, units, 1)?;
    let (mut lo, mut hi) = (scale * 1e-6, scale);
    let limit = scale * 1e6;
    while !exists(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > limit {
            return Err(DoubleWellError::BracketFailure {
                lo: scale * 1e-6,
                hi: limit,
            });
        }
    }
    if exists(lo)? {
        return Err(DoubleWellError::BracketFailure { lo, hi });
    }
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if exists(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Splitting of pair `n` at one barrier height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairGap {
    pub even: f64,
    pub odd: f64,
    /// `E_odd − E_even`. Underflows to zero for very high barriers.
    pub gap: f64,
    /// Natural log of the gap; stays finite where `gap` underflows.
    pub ln_gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapEntry {
    pub alpha: f64,
    pub result: Result<PairGap, DoubleWellError>,
}

/// Even/odd splitting of pair `n` for each barrier height, in input order.
///
/// When the two roots agree to better than `1e-7` relative their difference
/// is dominated by rounding, so the gap is taken from first-order
/// perturbation of the odd condition about the even root:
/// `δ = κ(coth κb − tanh κb) / (−g′_odd(E_even))`.
pub fn parity_gap_sweep(
    alphas: &[f64],
    n: usize,
    a: f64,
    b: f64,
    units: Units,
) -> Result<Vec<GapEntry>, DoubleWellError> {
    WellParams::new(a, b, super::Barrier::Infinite, units)?;
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let result = WellParams::new(a, b, super::Barrier::Finite(alpha), units).and_then(|p| pair_gap(&p, n));
        out.push(GapEntry { alpha, result });
    }
    Ok(out)
}

fn pair_gap(params: &WellParams, n: usize) -> Result<PairGap, DoubleWellError> {
    let alpha = params.alpha()?;
    let (even, odd) = level_pair(params, n)?;
    let (e, o) = (even.energy, odd.energy);
    let direct = o - e;
    if direct > 1e-7 * e {
        return Ok(PairGap {
            even: e,
            odd: o,
            gap: direct,
            ln_gap: math::ln(direct),
        });
    }
    let ln_gap = perturbative_ln_gap(params, alpha, e);
    let gap = math::exp(ln_gap);
    Ok(PairGap {
        even: e,
        odd: e + gap,
        gap,
        ln_gap,
    })
}

fn perturbative_ln_gap(params: &WellParams, alpha: f64, e: f64) -> f64 {
    let k = params.wavenumber(e);
    let kappa = params.decay_rate(alpha, e);
    let (hbar, mass) = (params.units.hbar, params.units.mass);
    let theta = k * params.well_width();
    let z = kappa * params.b;
    let (s, c) = (math::sin(theta), math::cos(theta));
    let well_term = mass / (hbar * hbar * k) * (c / s - theta / (s * s));
    let q = math::exp(-2.0 * z);
    // z/sinh²(z) in terms of e^{−2z} so it survives large z.
    let z_over_sinh2 = 4.0 * z * q / ((1.0 - q) * (1.0 - q));
    let coth = barrier_log_derivative(kappa, params.b, Parity::Odd) / kappa;
    let barrier_term = -mass / (hbar * hbar * kappa) * (coth - z_over_sinh2);
    let ln_delta = math::ln(4.0 * kappa) - 2.0 * z - math::ln_1p(-q * q);
    ln_delta - math::ln(-(well_term + barrier_term))
}

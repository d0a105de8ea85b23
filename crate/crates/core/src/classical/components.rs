use alloc::vec::Vec;

use super::ClassicalError;
use crate::numerics::find_root_bracketed;
use crate::potential::PotentialFn;

/// Number of samples used to scan `V(x) − E` over the scan interval.
pub const SCAN_SAMPLES: usize = 4000;

const ROOT_TOLERANCE: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Symmetric,
    Asymmetric,
    Separatrix,
}

impl SymmetryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Symmetric => "symmetric",
            Self::Asymmetric => "asymmetric",
            Self::Separatrix => "separatrix",
        }
    }
}

/// A connected piece of `{x : V(x) ≤ E}`. Ends that run past the scan
/// interval are infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Component {
    pub lo: f64,
    pub hi: f64,
}

impl Component {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn energy_tolerance(energy: f64) -> f64 {
    1e-9 * energy.abs().max(1.0)
}

fn check_scan(scan: (f64, f64)) -> Result<(), ClassicalError> {
    if !(scan.0.is_finite() && scan.1.is_finite() && scan.0 < scan.1) {
        return Err(ClassicalError::InvalidParameter {
            name: "scan interval",
            value: scan.1 - scan.0,
        });
    }
    Ok(())
}

/// All components of the allowed region found by sampling the scan interval.
pub fn allowed_components<V: PotentialFn + ?Sized>(
    v: &V,
    energy: f64,
    scan: (f64, f64),
) -> Result<Vec<Component>, ClassicalError> {
    check_scan(scan)?;
    let n = SCAN_SAMPLES;
    let step = (scan.1 - scan.0) / (n - 1) as f64;
    let x = |i: usize| if i == n - 1 { scan.1 } else { scan.0 + i as f64 * step };
    let allowed: Vec<bool> = (0..n).map(|i| v.value(x(i)) - energy <= 0.0).collect();

    let f = |t: f64| v.value(t) - energy;
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if !allowed[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < n && allowed[i + 1] {
            i += 1;
        }
        let lo = if start == 0 {
            f64::NEG_INFINITY
        } else {
            boundary(&f, x(start - 1), x(start))?
        };
        let hi = if i == n - 1 {
            f64::INFINITY
        } else {
            boundary(&f, x(i + 1), x(i))?
        };
        out.push(Component { lo, hi });
        i += 1;
    }
    Ok(out)
}

/// Turning point between a forbidden sample `outside` and an allowed one.
fn boundary<F: Fn(f64) -> f64>(f: &F, outside: f64, inside: f64) -> Result<f64, ClassicalError> {
    if f(inside) >= 0.0 {
        return Ok(inside);
    }
    let (lo, hi) = if outside < inside {
        (outside, inside)
    } else {
        (inside, outside)
    };
    Ok(find_root_bracketed(f, lo, hi, ROOT_TOLERANCE)?)
}

/// The component containing `x0`, found by stepping outward from `x0`.
pub(crate) fn component_containing<V: PotentialFn + ?Sized>(
    v: &V,
    energy: f64,
    x0: f64,
    scan: (f64, f64),
) -> Result<Component, ClassicalError> {
    check_scan(scan)?;
    let f = |t: f64| v.value(t) - energy;
    if !x0.is_finite() || f(x0) > energy_tolerance(energy) {
        return Err(ClassicalError::EnergyBelowMinimum { energy, x0 });
    }
    let step = (scan.1 - scan.0) / (SCAN_SAMPLES - 1) as f64;
    let walk = |direction: f64, limit: f64| -> Result<f64, ClassicalError> {
        let mut inside = x0;
        loop {
            let next = inside + direction * step;
            if (next - limit) * direction > 0.0 {
                return Ok(direction * f64::INFINITY);
            }
            if f(next) > 0.0 {
                return boundary(&f, next, inside);
            }
            inside = next;
        }
    };
    Ok(Component {
        lo: walk(-1.0, scan.0)?,
        hi: walk(1.0, scan.1)?,
    })
}

/// Symmetry class of the motion through `x0` at `energy`.
///
/// `Separatrix` when a local maximum inside the component sits at the energy;
/// otherwise `Symmetric` when the component maps onto itself under
/// reflection about `axis`.
pub fn classify_trajectory<V: PotentialFn + ?Sized>(
    v: &V,
    energy: f64,
    x0: f64,
    axis: f64,
    scan: (f64, f64),
) -> Result<SymmetryClass, ClassicalError> {
    let component = component_containing(v, energy, x0, scan)?;
    classify_component(v, energy, component, axis, scan)
}

pub(crate) fn classify_component<V: PotentialFn + ?Sized>(
    v: &V,
    energy: f64,
    c: Component,
    axis: f64,
    scan: (f64, f64),
) -> Result<SymmetryClass, ClassicalError> {
    if touches_maximum(v, energy, c, scan)? {
        return Ok(SymmetryClass::Separatrix);
    }
    let symmetric = match (c.lo.is_finite(), c.hi.is_finite()) {
        (false, false) => true,
        (true, true) => {
            let scale = c.lo.abs().max(c.hi.abs()).max(1.0);
            (c.lo - (2.0 * axis - c.hi)).abs() <= 1e-7 * scale
        }
        _ => false,
    };
    Ok(if symmetric {
        SymmetryClass::Symmetric
    } else {
        SymmetryClass::Asymmetric
    })
}

/// Whether `V` has a local maximum inside `c` at height `energy`.
fn touches_maximum<V: PotentialFn + ?Sized>(
    v: &V,
    energy: f64,
    c: Component,
    scan: (f64, f64),
) -> Result<bool, ClassicalError> {
    let lo = c.lo.max(scan.0);
    let hi = c.hi.min(scan.1);
    if hi.is_nan() || lo.is_nan() || hi <= lo {
        return Ok(false);
    }
    let samples = SCAN_SAMPLES;
    let step = (hi - lo) / (samples - 1) as f64;
    let tol = energy_tolerance(energy);
    let slope = |t: f64| v.slope(t);
    let mut prev_x = lo;
    let mut prev_s = slope(lo);
    for i in 1..samples {
        let x = if i == samples - 1 { hi } else { lo + i as f64 * step };
        let s = slope(x);
        if prev_s > 0.0 && s <= 0.0 {
            let top = if s == 0.0 {
                x
            } else {
                find_root_bracketed(slope, prev_x, x, ROOT_TOLERANCE)?
            };
            if (v.value(top) - energy).abs() <= tol {
                return Ok(true);
            }
        }
        prev_x = x;
        prev_s = s;
    }
    Ok(false)
}

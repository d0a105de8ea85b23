use super::NumericsError;

/// Iteration cap for [`find_root_bracketed`].
pub const ROOT_MAX_ITERATIONS: usize = 300;

/// Brent's method on a sign-changing bracket.
///
/// Returns `x` such that the final bracket, which contains a sign change of
/// `f` and has `x` as one end, is no wider than `tol` (or has shrunk to the
/// floating-point spacing around `x`). An exact zero of `f` ends the search
/// early.
///
/// Across a pole `f` also changes sign; the iteration then homes in on the
/// pole. Callers that know where poles are must split the interval first.
pub fn find_root_bracketed<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(NumericsError::InvalidArgument {
            reason: "bracket must be finite with lo < hi",
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(NumericsError::InvalidArgument {
            reason: "tolerance must be positive",
        });
    }

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if (fa * fb).is_nan() || fa * fb >= 0.0 {
        return Err(NumericsError::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    // `b` is the current estimate, `c` the contrapoint with opposite sign,
    // `a` the previous estimate.
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..ROOT_MAX_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let spacing = 4.0 * f64::EPSILON * b.abs();
        let tol1 = 0.5 * tol.max(spacing);
        let xm = 0.5 * (c - b);
        if fb == 0.0 || xm.abs() <= tol1 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(NumericsError::MaxIterations {
                iterations: ROOT_MAX_ITERATIONS,
                lo: b.min(c),
                hi: b.max(c),
            });
        }
    }

    Err(NumericsError::MaxIterations {
        iterations: ROOT_MAX_ITERATIONS,
        lo: b.min(c),
        hi: b.max(c),
    })
}

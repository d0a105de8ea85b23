use super::ClassicalError;
use crate::math;
use crate::potential::PotentialFn;

/// Default bound on `n` searched by [`local_max_model`] (derivatives up to 8th order).
pub const DEFAULT_MAX_HALF_ORDER: u32 = 4;

/// Base step of the difference quotients; Richardson uses `h`, `h/2`, `h/4`.
const BASE_STEP: f64 = 0.1;

/// Relative threshold below which a derivative counts as vanishing.
const VANISHING_THRESHOLD: f64 = 1e-6;

/// Leading Taylor term of a potential at a local maximum:
/// `V(x_a + x′) ≈ V(x_a) − γ²/(2n) · x′^{2n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalMaxModel {
    pub x_a: f64,
    pub n: u32,
    pub gamma_sq: f64,
    pub v_at_max: f64,
}

impl LocalMaxModel {
    /// Energy measured from the top of the maximum.
    pub fn e_prime(&self, energy: f64) -> f64 {
        energy - self.v_at_max
    }

    /// The model potential `−γ²/(2n) · x′^{2n}` in the shifted frame.
    pub fn model_potential(&self, x_prime: f64) -> f64 {
        -self.gamma_sq / f64::from(2 * self.n) * math::powi(x_prime, 2 * self.n)
    }
}

/// Fits the leading even Taylor term at `x_a`.
///
/// Derivatives of order `1..=2·n_max` are estimated with central differences
/// refined by two Richardson steps. A derivative counts as zero when both its
/// value and its error estimate fall below `1e-6` of the largest derivative
/// magnitude seen; it counts as nonzero when it clearly exceeds its own error
/// estimate. Anything in between is [`ClassicalError::ToleranceAmbiguous`].
pub fn local_max_model<V: PotentialFn + ?Sized>(v: &V, x_a: f64, n_max: u32) -> Result<LocalMaxModel, ClassicalError> {
    if !x_a.is_finite() {
        return Err(ClassicalError::InvalidParameter {
            name: "x_a",
            value: x_a,
        });
    }
    if n_max == 0 || n_max > 8 {
        return Err(ClassicalError::InvalidParameter {
            name: "n_max",
            value: f64::from(n_max),
        });
    }
    let orders = 2 * n_max;
    let mut estimates = [Estimate::default(); 16];
    for k in 1..=orders {
        estimates[k as usize - 1] = derivative(v, x_a, k);
    }
    let estimates = &estimates[..orders as usize];
    let scale = estimates
        .iter()
        .filter(|e| e.value.abs() > 10.0 * e.noise())
        .fold(0.0_f64, |m, e| m.max(e.value.abs()));
    let threshold = VANISHING_THRESHOLD * scale;

    for k in 1..=orders {
        let e = estimates[k as usize - 1];
        let d = e.value;
        let floor = threshold + e.rounding;
        let vanishes = d.abs() <= floor && e.truncation <= floor;
        let clearly_nonzero = d.abs() > floor && d.abs() > 10.0 * e.noise();
        if vanishes {
            continue;
        }
        if !clearly_nonzero {
            return Err(ClassicalError::ToleranceAmbiguous {
                order: k,
                estimate: d,
                noise: e.noise(),
            });
        }
        if k % 2 == 1 || d > 0.0 {
            return Err(ClassicalError::NotAMaximum { order: k });
        }
        let n = k / 2;
        let gamma_sq = -f64::from(k) * d / math::factorial(k);
        return Ok(LocalMaxModel {
            x_a,
            n,
            gamma_sq,
            v_at_max: v.value(x_a),
        });
    }
    Err(ClassicalError::NotAMaximum { order: orders })
}

/// Turning points `x′ = ±(−2n E′/γ²)^{1/(2n)}` of the local model, in the
/// frame centred on `x_a`.
pub fn local_turning_points(model: &LocalMaxModel, e_prime: f64) -> Result<(f64, f64), ClassicalError> {
    if e_prime.is_nan() {
        return Err(ClassicalError::InvalidParameter {
            name: "e_prime",
            value: e_prime,
        });
    }
    if e_prime == 0.0 {
        return Err(ClassicalError::AtSeparatrix);
    }
    if e_prime > 0.0 {
        return Err(ClassicalError::NoTurningPoints { e_prime });
    }
    if model.gamma_sq.is_nan() || model.gamma_sq <= 0.0 || model.n == 0 {
        return Err(ClassicalError::InvalidParameter {
            name: "gamma_sq",
            value: model.gamma_sq,
        });
    }
    let n = model.n;
    let base = -f64::from(2 * n) * e_prime / model.gamma_sq;
    let r = match n {
        1 => math::sqrt(base),
        2 => math::sqrt(math::sqrt(base)),
        _ => math::powf(base, 1.0 / f64::from(2 * n)),
    };
    Ok((-r, r))
}

#[derive(Clone, Copy, Debug, Default)]
struct Estimate {
    value: f64,
    truncation: f64,
    rounding: f64,
}

impl Estimate {
    fn noise(&self) -> f64 {
        self.truncation + self.rounding
    }
}

/// Central `k`-th difference with two Richardson refinements. The truncation
/// error is the larger of the last two corrections.
fn derivative<V: PotentialFn + ?Sized>(v: &V, x: f64, k: u32) -> Estimate {
    let h = BASE_STEP;
    let (d1, m1) = central_difference(v, x, k, h);
    let (d2, m2) = central_difference(v, x, k, h / 2.0);
    let (d3, m3) = central_difference(v, x, k, h / 4.0);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    let best = (16.0 * r2 - r1) / 15.0;
    Estimate {
        value: best,
        truncation: (best - r2).abs().max((r2 - r1).abs()),
        rounding: 8.0 * f64::EPSILON * m1.max(m2).max(m3),
    }
}

/// `h^{-k} Σ_j (−1)^j C(k, j) f(x + (k/2 − j)h)` and the rounding scale of the
/// sum.
fn central_difference<V: PotentialFn + ?Sized>(v: &V, x: f64, k: u32, h: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    for j in 0..=k {
        let offset = (f64::from(k) / 2.0 - f64::from(j)) * h;
        let term = math::binomial(k, j) * v.value(x + offset);
        let signed = if j % 2 == 0 { term } else { -term };
        sum += signed;
        magnitude += term.abs();
    }
    let hk = math::powi(h, k);
    (sum / hk, magnitude / hk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm1d::Potential;
    use proptest::prelude::*;

    #[test]
    fn quadratic_maximum_of_sombrero() {
        for mu in [0.5, 1.0, 2.0] {
            let v = Potential::sombrero(1.0, mu).unwrap();
            let m = local_max_model(&v, 0.0, DEFAULT_MAX_HALF_ORDER).unwrap();
            assert_eq!(m.n, 1);
            assert!((m.gamma_sq - 2.0 * mu).abs() < 1e-8 * mu, "{}", m.gamma_sq);
            assert_eq!(m.v_at_max, 0.0);
        }
    }

    #[test]
    fn quartic_maximum() {
        let m = local_max_model(&|x: f64| -x * x * x * x, 0.0, 4).unwrap();
        assert_eq!(m.n, 2);
        assert!((m.gamma_sq - 4.0).abs() < 1e-8);
        let sextic = local_max_model(&|x: f64| 1.0 - 3.0 * x * x * x * x * x * x, 0.0, 4).unwrap();
        assert_eq!(sextic.n, 3);
        // (1/6!)·d⁶V = −3 = −γ²/6.
        assert!((sextic.gamma_sq - 18.0).abs() < 1e-6);
        assert_eq!(sextic.v_at_max, 1.0);
    }

    #[test]
    fn shifted_non_polynomial_maximum() {
        // cos has a maximum at 0 with d²V = −1 → γ² = 1.
        let m = local_max_model(&|x: f64| math::cos(x - 1.5), 1.5, 4).unwrap();
        assert_eq!(m.n, 1);
        assert!((m.gamma_sq - 1.0).abs() < 1e-8);
    }

    #[test]
    fn non_maxima_are_rejected() {
        assert_eq!(
            local_max_model(&|x: f64| x * x, 0.0, 4),
            Err(ClassicalError::NotAMaximum { order: 2 })
        );
        assert_eq!(
            local_max_model(&|x: f64| x, 0.0, 4),
            Err(ClassicalError::NotAMaximum { order: 1 })
        );
        assert_eq!(
            local_max_model(&|_: f64| 2.0, 0.0, 2),
            Err(ClassicalError::NotAMaximum { order: 4 })
        );
        // The leading term lies beyond the searched order, so no order can be
        // trusted as nonzero.
        let flat = |x: f64| -x * x * x * x * x * x;
        assert!(local_max_model(&flat, 0.0, 2).is_err());
    }

    #[test]
    fn kink_is_ambiguous() {
        let v = Potential::double_oscillator(1.0, 1.0, 0.5).unwrap();
        assert!(matches!(
            local_max_model(&v, 0.0, 4),
            Err(ClassicalError::ToleranceAmbiguous { .. })
        ));
    }

    #[test]
    fn turning_point_formula() {
        let m1 = LocalMaxModel {
            x_a: 0.0,
            n: 1,
            gamma_sq: 2.0,
            v_at_max: 0.0,
        };
        assert_eq!(local_turning_points(&m1, -0.25).unwrap(), (-0.5, 0.5));
        let m2 = LocalMaxModel {
            x_a: 0.0,
            n: 2,
            gamma_sq: 4.0,
            v_at_max: 0.0,
        };
        assert_eq!(local_turning_points(&m2, -1.0).unwrap(), (-1.0, 1.0));
        assert_eq!(
            local_turning_points(&m1, 0.1),
            Err(ClassicalError::NoTurningPoints { e_prime: 0.1 })
        );
        assert_eq!(local_turning_points(&m1, 0.0), Err(ClassicalError::AtSeparatrix));
    }

    proptest! {
        #[test]
        fn turning_points_solve_the_model(n in 1u32..5, g in 0.1f64..10.0, e in -5.0f64..-1e-3) {
            let m = LocalMaxModel { x_a: 0.0, n, gamma_sq: g, v_at_max: 0.0 };
            let (lo, hi) = local_turning_points(&m, e).unwrap();
            prop_assert_eq!(lo, -hi);
            prop_assert!(hi > 0.0);
            prop_assert!((m.model_potential(hi) - e).abs() <= 1e-12 * e.abs().max(1.0));
        }

        #[test]
        fn turning_points_close_in_toward_the_top(n in 1u32..5, g in 0.1f64..10.0, e in -5.0f64..-1e-3) {
            let m = LocalMaxModel { x_a: 0.0, n, gamma_sq: g, v_at_max: 0.0 };
            let (_, lower) = local_turning_points(&m, e).unwrap();
            let (_, higher) = local_turning_points(&m, e * 0.5).unwrap();
            prop_assert!(higher < lower);
        }
    }
}

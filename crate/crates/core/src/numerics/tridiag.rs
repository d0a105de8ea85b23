//! Symmetric tridiagonal eigenpairs: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration for the eigenvectors.

use alloc::vec;
use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

/// Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self, NumericsError> {
        if diag.is_empty() {
            return Err(NumericsError::InvalidArgument {
                reason: "operator must be non-empty",
            });
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(NumericsError::LengthMismatch {
                expected: diag.len() - 1,
                found: offdiag.len(),
            });
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(NumericsError::InvalidArgument {
                reason: "entries must be finite",
            });
        }
        Ok(Self { diag, offdiag })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// The same operator plus `c·I`.
    #[must_use]
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|d| d + c).collect(),
            offdiag: self.offdiag.clone(),
        }
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// `A·v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        assert_eq!(v.len(), n, "vector length must match the operator");
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - lambda) - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> f64 {
        let emax = self.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * emax
    }
}

/// An eigenvalue with its unit-norm eigenvector, when one was requested.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Option<Vec<f64>>,
}

const BISECTION_MAX_STEPS: usize = 256;
const INVERSE_ITERATION_MAX_STEPS: usize = 12;

/// The `k` smallest eigenpairs of `op`, ascending.
///
/// Eigenvectors have unit Euclidean norm and satisfy
/// `‖A v − λ v‖ ≤ 1e-8 ‖A‖`; otherwise [`NumericsError::ConvergenceFailure`]
/// is returned.
pub fn eig_sym_tridiag(
    op: &TridiagonalOperator,
    k: usize,
    want_vectors: bool,
) -> Result<Vec<EigenPair>, NumericsError> {
    let n = op.len();
    if k == 0 || k > n {
        return Err(NumericsError::InvalidArgument {
            reason: "k must lie in 1..=n",
        });
    }
    let values = smallest_eigenvalues(op, k)?;
    if !want_vectors {
        return Ok(values
            .into_iter()
            .map(|value| EigenPair { value, vector: None })
            .collect());
    }

    let norm = op.norm().max(f64::MIN_POSITIVE);
    let cluster_gap = 1e-3 * norm;
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(k);
    for (index, &lambda) in values.iter().enumerate() {
        let vector = inverse_iteration(op, lambda, index, norm, |v| {
            for prev in pairs.iter().filter(|p| (p.value - lambda).abs() <= cluster_gap) {
                let u = prev.vector.as_deref().unwrap_or(&[]);
                let dot: f64 = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= dot * ui;
                }
            }
        })?;
        pairs.push(EigenPair {
            value: lambda,
            vector: Some(vector),
        });
    }
    Ok(pairs)
}

fn smallest_eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>, NumericsError> {
    let (glo, ghi) = op.gershgorin_bounds();
    let pad = f64::EPSILON * glo.abs().max(ghi.abs()).max(1.0);
    let (glo, ghi) = (glo - pad, ghi + pad);
    // Sturm counts are only backward stable to about eps·‖A‖.
    let abs_tol = f64::EPSILON * glo.abs().max(ghi.abs());
    let mut out = Vec::with_capacity(k);
    let mut floor = glo;
    for j in 0..k {
        let (mut lo, mut hi) = (floor, ghi);
        let mut converged = false;
        for _ in 0..BISECTION_MAX_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if op.sturm_count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= (2.0 * f64::EPSILON * lo.abs().max(hi.abs())).max(abs_tol) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(NumericsError::ConvergenceFailure { index: j });
        }
        let value = 0.5 * (lo + hi);
        out.push(value);
        floor = lo;
    }
    Ok(out)
}

/// LU factors of `A − λI` with partial pivoting (the LAPACK `gttrf` layout).
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(op: &TridiagonalOperator, lambda: f64, tiny: f64) -> Self {
        let n = op.len();
        let mut dl: Vec<f64> = op.offdiag.clone();
        let mut d: Vec<f64> = op.diag.iter().map(|x| x - lambda).collect();
        let mut du: Vec<f64> = op.offdiag.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        for di in &mut d {
            if di.abs() < tiny {
                *di = tiny.copysign(*di);
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn unit_normalize(v: &mut [f64]) -> bool {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if !(scale > 0.0 && scale.is_finite()) {
        return false;
    }
    for x in v.iter_mut() {
        *x /= scale;
    }
    let norm = math::sqrt(v.iter().map(|x| x * x).sum::<f64>());
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}

fn inverse_iteration<F: Fn(&mut [f64])>(
    op: &TridiagonalOperator,
    lambda: f64,
    index: usize,
    norm: f64,
    orthogonalize: F,
) -> Result<Vec<f64>, NumericsError> {
    let n = op.len();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let lu = ShiftedLu::factor(op, lambda, f64::EPSILON * norm);

    // Deterministic, generic start vector (a Weyl sequence).
    let golden = 0.618_033_988_749_894_9;
    let mut v: Vec<f64> = (0..n)
        .map(|i| {
            let t = ((i + 1) as f64 * golden + index as f64 * 0.137) % 1.0;
            0.5 + t
        })
        .collect();
    orthogonalize(&mut v);
    unit_normalize(&mut v);

    let target = 1e-10 * norm;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..INVERSE_ITERATION_MAX_STEPS {
        lu.solve_in_place(&mut v);
        orthogonalize(&mut v);
        if !unit_normalize(&mut v) {
            return Err(NumericsError::ConvergenceFailure { index });
        }
        let residual = residual_norm(op, lambda, &v);
        if best.as_ref().map_or(true, |(r, _)| residual < *r) {
            best = Some((residual, v.clone()));
        }
        if residual <= target {
            break;
        }
    }
    match best {
        Some((r, vec)) if r <= 1e-8 * norm => Ok(vec),
        _ => Err(NumericsError::ConvergenceFailure { index }),
    }
}

fn residual_norm(op: &TridiagonalOperator, lambda: f64, v: &[f64]) -> f64 {
    let av = op.apply(v);
    math::sqrt(
        av.iter()
            .zip(v)
            .map(|(a, x)| (a - lambda * x) * (a - lambda * x))
            .sum::<f64>(),
    )
}

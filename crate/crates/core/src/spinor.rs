//! Two displaced oscillators stacked into a spinor Hamiltonian
//! `ℍ = diag(Ĥ₊, Ĥ₋)` with `Ĥ± = −(ħ²/2m)d²/dx² + ½mω±²x² − ħω±/2`.
//!
//! `σ₃ = diag(1, −1)` commutes with `ℍ`; the branch spectra are `ħnω±`, so
//! the ground level is always doubly degenerate while excited levels
//! coincide only when `nω₊ = mω₋`.

use alloc::vec::Vec;
use core::fmt;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math;
use crate::numerics::{best_rational_approximations, trapezoid, Grid, NumericsError, TridiagonalOperator};
use crate::qm1d::{build_hamiltonian, solve_spectrum, Potential, Qm1dError};
use crate::units::Units;

#[derive(Clone, Debug, PartialEq)]
pub enum SpinorError {
    InvalidParameter { name: &'static str, value: f64 },
    Qm1d(Qm1dError),
    Numerics(NumericsError),
}

impl fmt::Display for SpinorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
            Self::Qm1d(e) => write!(f, "{e}"),
            Self::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SpinorError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Qm1d(e) => Some(e),
            Self::Numerics(e) => Some(e),
            Self::InvalidParameter { .. } => None,
        }
    }
}

impl From<Qm1dError> for SpinorError {
    fn from(e: Qm1dError) -> Self {
        Self::Qm1d(e)
    }
}

impl From<NumericsError> for SpinorError {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

impl From<crate::units::UnitsError> for SpinorError {
    fn from(e: crate::units::UnitsError) -> Self {
        Self::Qm1d(Qm1dError::Units(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorSystem {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub units: Units,
}

impl SpinorSystem {
    pub fn new(omega_plus: f64, omega_minus: f64, units: Units) -> Result<Self, SpinorError> {
        for (name, value) in [("omega_plus", omega_plus), ("omega_minus", omega_minus)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(SpinorError::InvalidParameter { name, value });
            }
        }
        Ok(Self {
            omega_plus,
            omega_minus,
            units: Units::new(units.hbar, units.mass)?,
        })
    }

    pub fn omega(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.omega_plus,
            Branch::Minus => self.omega_minus,
        }
    }

    /// Default degeneracy tolerance, `1e-9·ħ·min(ω±)`.
    pub fn default_tolerance(&self) -> f64 {
        1e-9 * self.units.hbar * self.omega_plus.min(self.omega_minus)
    }
}

/// `σ₃` eigenvalue of a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sigma3(self) -> i8 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorLevel {
    pub branch: Branch,
    pub n: u64,
    pub energy: f64,
}

/// Levels sharing exactly the same energy.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelGroup {
    pub energy: f64,
    pub labels: Vec<(Branch, u64)>,
}

/// All `ħnω±` up to `e_max`, ascending; equal energies list `Plus` first.
pub fn spinor_spectrum(sys: &SpinorSystem, e_max: f64) -> Result<Vec<SpinorLevel>, SpinorError> {
    if !(e_max.is_finite() && e_max >= 0.0) {
        return Err(SpinorError::InvalidParameter {
            name: "e_max",
            value: e_max,
        });
    }
    let hbar = sys.units.hbar;
    let mut out = Vec::new();
    for branch in [Branch::Plus, Branch::Minus] {
        let omega = sys.omega(branch);
        let mut n = 0u64;
        loop {
            let energy = hbar * n as f64 * omega;
            if energy > e_max {
                break;
            }
            out.push(SpinorLevel { branch, n, energy });
            n += 1;
        }
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.branch.cmp(&b.branch)));
    Ok(out)
}

/// Groups a sorted level list by exactly equal energy.
pub fn group_levels(levels: &[SpinorLevel]) -> Vec<LevelGroup> {
    let mut out: Vec<LevelGroup> = Vec::new();
    for l in levels {
        match out.last_mut() {
            Some(g) if g.energy == l.energy => g.labels.push((l.branch, l.n)),
            _ => out.push(LevelGroup {
                energy: l.energy,
                labels: alloc::vec![(l.branch, l.n)],
            }),
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Degeneracy {
    pub n: u64,
    pub m: u64,
    /// `|ħnω₊ − ħmω₋|`.
    pub mismatch: f64,
}

/// Excited-level coincidences `|ħnω₊ − ħmω₋| ≤ tol` with `1 ≤ n, m ≤ n_max`,
/// sorted by `(n, m)`.
///
/// When `2·n_max·tol < ħω₋/2`, every such `m/n` is within `1/(2n²)` of
/// `ω₊/ω₋` and therefore reduces to a continued-fraction convergent, so only
/// multiples of convergents are checked. Otherwise each `n` is checked against
/// the few `m` in its tolerance window.
pub fn find_degeneracies(sys: &SpinorSystem, n_max: u64, tol: f64) -> Result<Vec<Degeneracy>, SpinorError> {
    if n_max == 0 {
        return Err(SpinorError::InvalidParameter {
            name: "n_max",
            value: 0.0,
        });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpinorError::InvalidParameter {
            name: "tol",
            value: tol,
        });
    }
    let hbar = sys.units.hbar;
    let (wp, wm) = (sys.omega_plus, sys.omega_minus);
    let mismatch = |n: u64, m: u64| (hbar * n as f64 * wp - hbar * m as f64 * wm).abs();
    let mut out = Vec::new();

    if 4.0 * n_max as f64 * tol < hbar * wm {
        let convergents = best_rational_approximations(wp / wm, n_max)?;
        for c in convergents.iter().filter(|c| c.p > 0) {
            let (q, p) = (c.q, c.p as u64);
            let mut k = 1;
            while k * q <= n_max && k * p <= n_max {
                let (n, m) = (k * q, k * p);
                let d = mismatch(n, m);
                if d <= tol {
                    out.push(Degeneracy { n, m, mismatch: d });
                }
                k += 1;
            }
        }
    } else {
        for n in 1..=n_max {
            let centre = hbar * n as f64 * wp;
            let lo = math::floor((centre - tol) / (hbar * wm)).max(1.0) as u64;
            let hi = (math::floor((centre + tol) / (hbar * wm)) + 1.0).min(n_max as f64) as u64;
            for m in lo..=hi {
                let d = mismatch(n, m);
                if d <= tol {
                    out.push(Degeneracy { n, m, mismatch: d });
                }
            }
        }
    }
    out.sort_by_key(|d| (d.n, d.m));
    out.dedup_by_key(|d| (d.n, d.m));
    Ok(out)
}

/// Which constant offsets [`decompose_with`] uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OffsetConvention {
    /// `ε₀ = ħ(ω₊+ω₋)/4`, `ε_Δ = ħ(ω₊−ω₋)/4`, reproducing the `−ħω±/2`
    /// offsets of the blocks.
    #[default]
    Corrected,
    /// `ε₀ = ħ(ω₊+ω₋)/2`, `ε_Δ = ħ(ω₊−ω₋)/2`; each block comes out shifted
    /// by a further `−ħω±/2`. Kept as a negative control.
    AsPrinted,
}

/// `ℍ = Ĥ₀𝕀 + u(x)σ₃` with `Ĥ₀ = −(ħ²/2m)d² + ½mω₀²x² − ε₀` and
/// `u(x) = ½mω_Δ²x² − ε_Δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    pub omega0: f64,
    /// `(ω₊² − ω₋²)/2`; negative when `ω₊ < ω₋`.
    pub omega_delta_sq: f64,
    pub eps0: f64,
    pub eps_delta: f64,
}

impl Decomposition {
    /// The potential part of `Ĥ₀`.
    pub fn h0_potential(&self, mass: f64, x: f64) -> f64 {
        0.5 * mass * self.omega0 * self.omega0 * x * x - self.eps0
    }

    /// The spinorial interaction `u(x)`.
    pub fn interaction(&self, mass: f64, x: f64) -> f64 {
        0.5 * mass * self.omega_delta_sq * x * x - self.eps_delta
    }
}

pub fn decompose(sys: &SpinorSystem) -> Decomposition {
    decompose_with(sys, OffsetConvention::Corrected)
}

pub fn decompose_with(sys: &SpinorSystem, convention: OffsetConvention) -> Decomposition {
    let (wp, wm) = (sys.omega_plus, sys.omega_minus);
    let hbar = sys.units.hbar;
    let denominator = match convention {
        OffsetConvention::Corrected => 4.0,
        OffsetConvention::AsPrinted => 2.0,
    };
    Decomposition {
        omega0: math::sqrt(0.5 * (wp * wp + wm * wm)),
        omega_delta_sq: 0.5 * (wp * wp - wm * wm),
        eps0: hbar * (wp + wm) / denominator,
        eps_delta: hbar * (wp - wm) / denominator,
    }
}

fn block_potential(sys: &SpinorSystem, branch: Branch) -> Result<Potential, SpinorError> {
    let omega = sys.omega(branch);
    Ok(Potential::harmonic(
        sys.units.mass,
        omega,
        0.5 * sys.units.hbar * omega,
    )?)
}

/// Max entry-wise difference between the blocks built directly and the
/// blocks built as `Ĥ₀ ± u(x)` from the decomposition.
pub fn reconstruction_residual(
    sys: &SpinorSystem,
    grid: &Grid,
    convention: OffsetConvention,
) -> Result<f64, SpinorError> {
    let d = decompose_with(sys, convention);
    let mass = sys.units.mass;
    let mut worst = 0.0_f64;
    for branch in [Branch::Plus, Branch::Minus] {
        let direct = build_hamiltonian(&block_potential(sys, branch)?, grid, sys.units)?;
        let s = f64::from(branch.sigma3());
        let assembled = build_hamiltonian(
            &|x: f64| d.h0_potential(mass, x) + s * d.interaction(mass, x),
            grid,
            sys.units,
        )?;
        worst = worst.max(max_difference(&direct, &assembled));
    }
    Ok(worst)
}

fn max_difference(a: &TridiagonalOperator, b: &TridiagonalOperator) -> f64 {
    let diag = a.diag().iter().zip(b.diag()).map(|(x, y)| (x - y).abs());
    let off = a.offdiag().iter().zip(b.offdiag()).map(|(x, y)| (x - y).abs());
    diag.chain(off).fold(0.0, f64::max)
}

/// Result of applying `[σ₃, ℍ]` to random unit spinors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorAudit {
    pub max_norm: f64,
    pub trials: usize,
    pub seed: u64,
}

/// `max ‖(σ₃ℍ − ℍσ₃)Ψ‖` over `trials` random unit spinors drawn from a
/// ChaCha8 stream seeded with `seed`.
///
/// `coupling` adds `coupling·σ₁` to `ℍ`; zero gives the model itself, and a
/// nonzero value is a negative control with commutator norm `2·|coupling|`.
pub fn commutator_audit(
    sys: &SpinorSystem,
    grid: &Grid,
    trials: usize,
    seed: u64,
    coupling: f64,
) -> Result<CommutatorAudit, SpinorError> {
    if trials == 0 {
        return Err(SpinorError::InvalidParameter {
            name: "trials",
            value: 0.0,
        });
    }
    let plus = build_hamiltonian(&block_potential(sys, Branch::Plus)?, grid, sys.units)?;
    let minus = build_hamiltonian(&block_potential(sys, Branch::Minus)?, grid, sys.units)?;
    let n = plus.len();
    let interior = Grid::new(grid.x(1), grid.x(n), n)?;
    let apply = |upper: &[f64], lower: &[f64]| -> (Vec<f64>, Vec<f64>) {
        let mut hu = plus.apply(upper);
        let mut hl = minus.apply(lower);
        for i in 0..n {
            hu[i] += coupling * lower[i];
            hl[i] += coupling * upper[i];
        }
        (hu, hl)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
    let spinor_norm = |u: &[f64], l: &[f64]| {
        let upper = trapezoid(&interior, u.iter().map(|v| v * v));
        let lower = trapezoid(&interior, l.iter().map(|v| v * v));
        math::sqrt(upper + lower)
    };

    let mut max_norm = 0.0_f64;
    for _ in 0..trials {
        let mut upper: Vec<f64> = (0..n).map(|_| uniform()).collect();
        let mut lower: Vec<f64> = (0..n).map(|_| uniform()).collect();
        let norm = spinor_norm(&upper, &lower);
        upper.iter_mut().chain(lower.iter_mut()).for_each(|v| *v /= norm);

        // σ₃ℍΨ
        let (hu, hl) = apply(&upper, &lower);
        // ℍσ₃Ψ
        let flipped: Vec<f64> = lower.iter().map(|v| -v).collect();
        let (gu, gl) = apply(&upper, &flipped);
        let cu: Vec<f64> = hu.iter().zip(&gu).map(|(a, b)| a - b).collect();
        let cl: Vec<f64> = hl.iter().zip(&gl).map(|(a, b)| -a - b).collect();
        max_norm = max_norm.max(spinor_norm(&cu, &cl));
    }
    Ok(CommutatorAudit { max_norm, trials, seed })
}

/// A numerically computed level of one block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpinorLevel {
    pub branch: Branch,
    pub n: usize,
    pub energy: f64,
}

/// The `k` lowest grid levels of each block, merged in ascending order.
pub fn grid_spinor_spectrum(sys: &SpinorSystem, grid: &Grid, k: usize) -> Result<Vec<GridSpinorLevel>, SpinorError> {
    let mut out = Vec::with_capacity(2 * k);
    for branch in [Branch::Plus, Branch::Minus] {
        let spectrum = solve_spectrum(&block_potential(sys, branch)?, grid, k, sys.units)?;
        out.extend(spectrum.levels.iter().map(|l| GridSpinorLevel {
            branch,
            n: l.index,
            energy: l.energy,
        }));
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.branch.cmp(&b.branch)));
    Ok(out)
}

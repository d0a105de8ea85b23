//! The acceptance suite behind `sombrero verify`.

use sombrero_core::classical::{
    classify_trajectory, local_max_model, local_turning_points, phase_portrait, LocalMaxModel, SymmetryClass,
    DEFAULT_MAX_HALF_ORDER,
};
use sombrero_core::doublewell::{
    infinite_barrier_states, level_pair, levels_below_barrier, limit_levels, parity_gap_sweep, WellParams,
};
use sombrero_core::numerics::inner_product;
use sombrero_core::qm1d::{
    annihilation_residual, expectation_x, parity_audit, sextic_ground_check, solve_spectrum_by_parity, Potential,
};
use sombrero_core::spinor::{
    find_degeneracies, grid_spinor_spectrum, group_levels, reconstruction_residual, spinor_spectrum, Branch,
    OffsetConvention, SpinorSystem,
};
use sombrero_core::{Grid, Units};

use crate::commands::portrait::{self, PortraitArgs, PortraitFigure};
use crate::commands::spectrum::{self, SpectrumArgs};
use crate::commands::{Format, OutputArgs, PotentialArgs, PotentialKind, UnitsArgs};
use crate::error::LabError;
use crate::figure::{extract_polylines, ExtractedCurve};
use crate::format::fmt_sig;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub check: fn() -> Result<Outcome, LabError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteLine {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Outcome,
}

impl SuiteLine {
    pub fn render(&self) -> String {
        let status = if self.outcome.passed { "pass" } else { "FAIL" };
        format!("{status:4}  {:>2}  {:<28} {}", self.id, self.name, self.outcome.detail)
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "sextic ground state",
            check: sextic_ground,
        },
        Criterion {
            id: 2,
            name: "annihilation operator",
            check: annihilation,
        },
        Criterion {
            id: 3,
            name: "parity audit",
            check: parity,
        },
        Criterion {
            id: 4,
            name: "double-well oracle",
            check: doublewell_oracle,
        },
        Criterion {
            id: 5,
            name: "infinite-barrier limit",
            check: infinite_limit,
        },
        Criterion {
            id: 6,
            name: "concentrated states",
            check: concentrated,
        },
        Criterion {
            id: 7,
            name: "classical dynamics",
            check: classical,
        },
        Criterion {
            id: 8,
            name: "local-maximum model",
            check: local_max,
        },
        Criterion {
            id: 9,
            name: "spinor spectrum",
            check: spinor,
        },
        Criterion {
            id: 10,
            name: "decomposition",
            check: decomposition,
        },
        Criterion {
            id: 11,
            name: "figure reproduction",
            check: figures,
        },
    ]
}

/// Runs every criterion; an error inside a check counts as a failure.
pub fn run_suite() -> Vec<SuiteLine> {
    criteria()
        .into_iter()
        .map(|c| {
            let outcome = (c.check)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
            SuiteLine {
                id: c.id,
                name: c.name,
                outcome,
            }
        })
        .collect()
}

fn unit() -> Units {
    Units::default()
}

fn sextic_ground() -> Result<Outcome, LabError> {
    let coarse = sextic_ground_check(1.0, &Grid::symmetric(3.0, 2000)?, unit())?;
    let fine = sextic_ground_check(1.0, &Grid::symmetric(3.0, 4000)?, unit())?;
    let shrink = coarse.e0.abs() / fine.e0.abs();
    let passed = coarse.e0.abs() <= 5e-3 && coarse.overlap >= 0.999 && shrink >= 3.0;
    Ok(Outcome::new(
        passed,
        format!(
            "|E0| = {:.3e}, overlap = {:.6}, refinement shrinks |E0| by {shrink:.2}x",
            coarse.e0.abs(),
            coarse.overlap
        ),
    ))
}

fn annihilation() -> Result<Outcome, LabError> {
    let fine = annihilation_residual(1.0, &Grid::symmetric(3.0, 4001)?)?;
    let coarse = annihilation_residual(1.0, &Grid::symmetric(3.0, 2001)?)?;
    let ratio = coarse / fine;
    let passed = fine < 1e-3 && (3.5..=4.5).contains(&ratio);
    Ok(Outcome::new(
        passed,
        format!("residual {fine:.3e}, halving dx reduces it {ratio:.2}x"),
    ))
}

fn parity() -> Result<Outcome, LabError> {
    let grid = Grid::symmetric(3.0, 2000)?;
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for v in [Potential::sombrero(1.0, 1.0)?, Potential::sextic(1.0, unit())?] {
        let audit = parity_audit(&v, 0.0, &grid, 10, unit())?;
        passed &= audit.passed && audit.levels.len() == 10 && audit.degenerate_pairs.is_empty();
        worst = audit.levels.iter().map(|l| l.measure).fold(worst, f64::max);
    }
    passed &= worst < 1e-6;
    Ok(Outcome::new(passed, format!("20 levels, worst asymmetry {worst:.2e}")))
}

fn doublewell_oracle() -> Result<Outcome, LabError> {
    let params = WellParams::finite(200.0, 2.0, 0.5)?;
    let roots = levels_below_barrier(&params, usize::MAX)?;
    let grid = Grid::symmetric(2.0, 4000)?;
    let spectrum = solve_spectrum_by_parity(&params.potential()?, &grid, roots.len(), unit())?;
    let mut worst: f64 = 0.0;
    let mut passed = !roots.is_empty() && spectrum.levels.len() == roots.len();
    for (root, level) in roots.iter().zip(&spectrum.levels) {
        worst = worst.max((root.energy - level.energy).abs());
        passed &= root.parity == level.parity;
    }
    passed &= worst < 1e-2;
    Ok(Outcome::new(
        passed,
        format!("{} roots, max |E_root - E_grid| = {worst:.2e}", roots.len()),
    ))
}

fn infinite_limit() -> Result<Outcome, LabError> {
    let params = WellParams::finite(1e6, 2.0, 0.5)?;
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        let limit = limit_levels(2.0, 0.5, unit(), n)?;
        let (even, odd) = level_pair(&params, n)?;
        for e in [even.energy, odd.energy] {
            worst = worst.max((e - limit).abs() / limit);
        }
    }
    let sweep = parity_gap_sweep(&[50.0, 1e4], 1, 2.0, 0.5, unit())?;
    let gap = |i: usize| {
        sweep[i]
            .result
            .as_ref()
            .map(|g| g.gap)
            .map_err(|e| LabError::from(e.clone()))
    };
    let (low, high) = (gap(0)?, gap(1)?);
    let passed = worst < 1e-3 && high < low / 10.0;
    Ok(Outcome::new(
        passed,
        format!("max rel. deviation {worst:.2e}; gap {low:.3e} at 50, {high:.3e} at 1e4"),
    ))
}

fn concentrated() -> Result<Outcome, LabError> {
    let (a, b) = (2.0, 1.0);
    let grid = Grid::new(-a, a, 4001)?;
    let c = infinite_barrier_states(1, a, b, &grid)?;
    let left = (expectation_x(&c.psi_l)? + (a + b) / 2.0).abs();
    let plus = expectation_x(&c.psi_plus)?.abs();
    let minus = expectation_x(&c.psi_minus)?.abs();
    let overlap = inner_product(&c.psi_l, &c.psi_r)?;
    let mut shift: f64 = 0.0;
    for n in 1..=5 {
        let e1 = limit_levels(2.0, 1.0, unit(), n)?;
        let e2 = limit_levels(3.0, 2.0, unit(), n)?;
        shift = shift.max((e1 - e2).abs() / e1);
    }
    let passed = left <= 1e-10 && plus <= 1e-10 && minus <= 1e-10 && overlap == 0.0 && shift <= 1e-12;
    Ok(Outcome::new(
        passed,
        format!("<x> errors {left:.1e}/{plus:.1e}/{minus:.1e}, <L|R> = {overlap}, b-shift {shift:.1e}"),
    ))
}

fn classical() -> Result<Outcome, LabError> {
    let v = Potential::sombrero(1.0, 1.0)?;
    let scan = (-3.0, 3.0);
    let entries = phase_portrait(&v, 1.0, &[0.5], scan, 1e-3, 10_000)?;
    let drift = match entries.first().map(|e| &e.trajectory) {
        Some(Ok(t)) => t.energy_drift(&v, 1.0),
        Some(Err(e)) => return Err(e.clone().into()),
        None => f64::INFINITY,
    };
    let mut passed = drift < 1e-6;
    let mut wrong = Vec::new();
    let cases = [
        (0.1, 0.0, SymmetryClass::Symmetric),
        (0.5, 0.0, SymmetryClass::Symmetric),
        (1.0, 0.0, SymmetryClass::Symmetric),
        (-0.1, -0.7, SymmetryClass::Asymmetric),
        (-0.1, 0.7, SymmetryClass::Asymmetric),
        (0.0, -0.5, SymmetryClass::Separatrix),
    ];
    for (e, x0, expected) in cases {
        let got = classify_trajectory(&v, e, x0, 0.0, scan)?;
        if got != expected {
            wrong.push(format!("E={e}: {}", got.as_str()));
        }
    }
    passed &= wrong.is_empty();
    Ok(Outcome::new(
        passed,
        format!("energy drift {drift:.2e}; misclassified: {wrong:?}"),
    ))
}

fn local_max() -> Result<Outcome, LabError> {
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for mu in [0.5, 1.0, 2.0] {
        let m = local_max_model(&Potential::sombrero(1.0, mu)?, 0.0, DEFAULT_MAX_HALF_ORDER)?;
        passed &= m.n == 1;
        worst = worst.max((m.gamma_sq - 2.0 * mu).abs() / (2.0 * mu));
    }
    let model = LocalMaxModel {
        x_a: 0.0,
        n: 1,
        gamma_sq: 2.0,
        v_at_max: 0.0,
    };
    let (lo, hi) = local_turning_points(&model, -0.25)?;
    let turning = (lo + 0.5).abs().max((hi - 0.5).abs());
    passed &= worst < 1e-2 && turning <= f64::EPSILON;
    Ok(Outcome::new(
        passed,
        format!("gamma^2 rel. error {worst:.2e}; turning points ({lo}, {hi})"),
    ))
}

fn spinor() -> Result<Outcome, LabError> {
    let sys = SpinorSystem::new(std::f64::consts::SQRT_2, 1.0, unit())?;
    let grid = Grid::symmetric(10.0, 2000)?;
    let mut worst: f64 = 0.0;
    for level in grid_spinor_spectrum(&sys, &grid, 6)? {
        let exact = level.n as f64 * sys.omega(level.branch);
        worst = worst.max((level.energy - exact).abs());
    }
    let ground = group_levels(&spinor_spectrum(&sys, 0.0)?);
    let ground_ok = ground.len() == 1 && ground[0].energy == 0.0 && ground[0].labels.len() == 2;

    let found = find_degeneracies(&sys, 10_000, 1e-9)?;
    let brute = brute_force_degeneracies(&sys, 10_000, 1e-9);
    let found_pairs: Vec<(u64, u64)> = found.iter().map(|d| (d.n, d.m)).collect();

    let rational = SpinorSystem::new(1.5, 1.0, unit())?;
    let pairs: Vec<(u64, u64)> = find_degeneracies(&rational, 99, 1e-9)?
        .iter()
        .map(|d| (d.n, d.m))
        .collect();
    let expected: Vec<(u64, u64)> = (1..=33).map(|k| (2 * k, 3 * k)).collect();

    let passed = worst < 1e-3 && ground_ok && found.is_empty() && found_pairs == brute && pairs == expected;
    Ok(Outcome::new(
        passed,
        format!(
            "grid error {worst:.2e}; {} ground labels; {} sqrt2 coincidences; {} at 3/2",
            ground.first().map_or(0, |g| g.labels.len()),
            found.len(),
            pairs.len()
        ),
    ))
}

fn brute_force_degeneracies(sys: &SpinorSystem, n_max: u64, tol: f64) -> Vec<(u64, u64)> {
    let h = sys.units.hbar;
    let (wp, wm) = (sys.omega(Branch::Plus), sys.omega(Branch::Minus));
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n_max {
            if (h * n as f64 * wp - h * m as f64 * wm).abs() <= tol {
                out.push((n, m));
            }
        }
    }
    out
}

fn decomposition() -> Result<Outcome, LabError> {
    let sys = SpinorSystem::new(std::f64::consts::SQRT_2, 1.0, unit())?;
    let grid = Grid::symmetric(10.0, 2000)?;
    let corrected = reconstruction_residual(&sys, &grid, OffsetConvention::Corrected)?;
    let printed = reconstruction_residual(&sys, &grid, OffsetConvention::AsPrinted)?;
    let expected = sys.units.hbar * sys.omega_plus / 2.0;
    let passed = corrected <= 1e-10 && (printed - expected).abs() <= 1e-10;
    Ok(Outcome::new(
        passed,
        format!("corrected {corrected:.2e}; as printed {printed:.12} (hbar w+/2 = {expected:.12})"),
    ))
}

fn in_memory_output() -> OutputArgs {
    OutputArgs {
        out: std::env::temp_dir(),
        formats: vec![Format::Svg],
    }
}

fn sombrero_args() -> PotentialArgs {
    PotentialArgs {
        potential: PotentialKind::Sombrero,
        lambda: 1.0,
        mu: 1.0,
        a: None,
        b: None,
        alpha: None,
        nu: 1.0,
        omega: 1.0,
        offset: 0.0,
    }
}

/// Local minima of a sampled curve, refined by a parabola through each
/// minimal sample and its neighbours.
pub fn sampled_minima(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for w in points.windows(3) {
        let [(x0, y0), (x1, y1), (x2, y2)] = [w[0], w[1], w[2]];
        if y1 < y0 && y1 <= y2 {
            let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
            let shift = if denom == 0.0 {
                0.0
            } else {
                0.5 * ((x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0)) / denom
            };
            out.push((x1 - shift, y1));
        }
    }
    out
}

fn potential_minima(curves: &[ExtractedCurve]) -> Option<Vec<(f64, f64)>> {
    curves
        .iter()
        .find(|c| c.label == "V(x)")
        .map(|c| sampled_minima(&c.points))
}

fn figures() -> Result<Outcome, LabError> {
    let target = (1.0f64 / 2.0).sqrt();
    let minima_ok = |minima: &Option<Vec<(f64, f64)>>| match minima.as_deref() {
        Some([(l, vl), (r, vr)]) => (l + target).abs() < 1e-3 && (r - target).abs() < 1e-3 && *vl < 0.0 && *vr < 0.0,
        _ => false,
    };

    let mut base = PortraitArgs {
        potential: sombrero_args(),
        energies: vec![-0.1, 0.0, 0.5],
        figure: PortraitFigure::Potential,
        scan: None,
        range: Some(vec![-1.5, 1.5]),
        dt: 1e-3,
        steps: 10_000,
        stride: 10,
        samples: 3001,
        units: UnitsArgs { hbar: 1.0, mass: 1.0 },
        output: in_memory_output(),
    };
    let svg = |out: crate::commands::CommandOutput, name: &str| -> Result<Vec<ExtractedCurve>, LabError> {
        let text = out.artifact(name).and_then(|a| a.text()).unwrap_or_default().to_owned();
        Ok(extract_polylines(&text))
    };
    let potential = potential_minima(&svg(portrait::build(&base)?, "potential.svg")?);

    base.figure = PortraitFigure::Phase;
    let phase = svg(portrait::build(&base)?, "phase_portrait.svg")?;
    let lobes = |e: f64| phase.iter().filter(|c| c.energy == Some(e)).count();
    let topology = (lobes(-0.1), lobes(0.5));

    let spectrum_args = SpectrumArgs {
        potential: sombrero_args(),
        levels: 4,
        domain: Some(vec![-3.0, 3.0]),
        points: 2001,
        by_parity: false,
        units: UnitsArgs { hbar: 1.0, mass: 1.0 },
        output: in_memory_output(),
    };
    let spectral = potential_minima(&svg(spectrum::build(&spectrum_args)?, "spectrum.svg")?);

    let passed = minima_ok(&potential) && minima_ok(&spectral) && topology == (2, 1);
    let positions = |m: &Option<Vec<(f64, f64)>>| {
        m.as_deref()
            .unwrap_or_default()
            .iter()
            .map(|p| fmt_sig(p.0, 6))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(Outcome::new(
        passed,
        format!(
            "minima at [{}] (portrait), [{}] (spectrum); orbits below/above E=0: {}/{}",
            positions(&potential),
            positions(&spectral),
            topology.0,
            topology.1
        ),
    ))
}

use clap::Args;
use sombrero_core::doublewell::{
    assemble_wavefunction, infinite_barrier_states, levels_below_barrier, limit_levels, parity_gap_sweep,
    threshold_alpha, Barrier, WellParams,
};
use sombrero_core::qm1d::Parity;
use sombrero_core::{Grid, TabulatedState};

use super::{offset_state, stacking_scale, CommandOutput, OutputArgs, RunConfig, UnitsArgs};
use crate::error::LabError;
use crate::figure::{Curve, FigureDocument};
use crate::format::fmt_sig;
use crate::table::Table;

#[derive(Args, Clone, Debug, PartialEq)]
pub struct DoubleWellArgs {
    /// Barrier height; `inf` for an impenetrable barrier.
    #[arg(long, default_value_t = 200.0)]
    pub alpha: f64,
    /// Outer wall position.
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    /// Barrier half-width.
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    /// Number of lowest levels to report.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Barrier heights for a parity-gap sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub gap_alphas: Vec<f64>,
    /// Pair index used by the gap sweep.
    #[arg(long, default_value_t = 1)]
    pub pair: usize,
    /// Grid points of the wavefunction figure.
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[command(flatten)]
    pub units: UnitsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

struct Row {
    n: usize,
    parity: Parity,
    energy: f64,
    below_barrier: bool,
}

pub fn build(args: &DoubleWellArgs) -> Result<CommandOutput, LabError> {
    let config = RunConfig::new(&args.output, &args.units)?;
    let units = config.units;
    if args.levels == 0 {
        return Err(LabError::Invalid("--levels must be positive".to_owned()));
    }
    let barrier = if args.alpha == f64::INFINITY {
        Barrier::Infinite
    } else {
        Barrier::Finite(args.alpha)
    };
    let params = WellParams::new(args.a, args.b, barrier, units)?;
    let mut out = CommandOutput::default();

    let rows: Vec<Row> = match barrier {
        Barrier::Finite(_) => levels_below_barrier(&params, args.levels)?
            .into_iter()
            .take(args.levels)
            .map(|l| Row {
                n: l.n,
                parity: l.parity,
                energy: l.energy,
                below_barrier: l.below_barrier,
            })
            .collect(),
        Barrier::Infinite => {
            let mut rows = Vec::new();
            for n in 1..=args.levels.div_ceil(2) {
                let energy = limit_levels(args.a, args.b, units, n)?;
                for parity in [Parity::Even, Parity::Odd] {
                    rows.push(Row {
                        n,
                        parity,
                        energy,
                        below_barrier: true,
                    });
                }
            }
            rows.truncate(args.levels);
            rows
        }
    };
    if rows.len() < args.levels {
        out.warnings
            .push(format!("only {} levels lie below the barrier", rows.len()));
    }

    let mut levels = Table::new(["index", "n", "parity", "energy", "below_barrier"]);
    for (i, r) in rows.iter().enumerate() {
        levels.push(vec![
            i.into(),
            r.n.into(),
            r.parity.as_str().into(),
            r.energy.into(),
            (if r.below_barrier { "true" } else { "false" }).into(),
        ])?;
        out.summary.push(format!(
            "E[{i}] = {} (n = {}, {})",
            fmt_sig(r.energy, 12),
            r.n,
            r.parity.as_str()
        ));
    }

    let threshold = threshold_alpha(args.a, args.b, units)?;
    let limit_ground = limit_levels(args.a, args.b, units, 1)?;
    let mut summary = Table::new(["alpha", "a", "b", "threshold_alpha", "limit_e1", "levels_found"]);
    summary.push(vec![
        args.alpha.into(),
        args.a.into(),
        args.b.into(),
        threshold.into(),
        limit_ground.into(),
        rows.len().into(),
    ])?;
    out.summary
        .push(format!("threshold alpha = {}", fmt_sig(threshold, 12)));

    out.artifacts.extend(config.tables("levels", &levels)?);
    out.artifacts.extend(config.tables("summary", &summary)?);

    if !args.gap_alphas.is_empty() {
        let mut gaps = Table::new(["alpha", "even", "odd", "gap", "ln_gap", "status"]);
        for entry in parity_gap_sweep(&args.gap_alphas, args.pair, args.a, args.b, units)? {
            match entry.result {
                Ok(g) => gaps.push(vec![
                    entry.alpha.into(),
                    g.even.into(),
                    g.odd.into(),
                    g.gap.into(),
                    g.ln_gap.into(),
                    "ok".into(),
                ])?,
                Err(e) => {
                    let nan = f64::NAN;
                    gaps.push(vec![
                        entry.alpha.into(),
                        nan.into(),
                        nan.into(),
                        nan.into(),
                        nan.into(),
                        e.to_string().into(),
                    ])?
                }
            }
        }
        out.artifacts.extend(config.tables("gaps", &gaps)?);
    }

    if config.wants(super::Format::Svg) && !rows.is_empty() {
        let figure = states_figure(args, &params, barrier, &rows)?;
        out.artifacts.extend(config.figure("states", &figure)?);
    }
    Ok(out)
}

fn states_figure(
    args: &DoubleWellArgs,
    params: &WellParams,
    barrier: Barrier,
    rows: &[Row],
) -> Result<FigureDocument, LabError> {
    let grid = Grid::new(-args.a, args.a, args.points)?;
    let mut states: Vec<(String, f64, TabulatedState, bool)> = Vec::new();
    match barrier {
        Barrier::Finite(_) => {
            let all = levels_below_barrier(params, args.levels)?;
            for level in all.iter().take(rows.len()) {
                let assembled = assemble_wavefunction(level, params, &grid)?;
                states.push((
                    format!("n={} {}", level.n, level.parity.as_str()),
                    level.energy,
                    assembled.state,
                    false,
                ));
            }
        }
        Barrier::Infinite => {
            for r in rows.iter().filter(|r| r.parity == Parity::Even) {
                let c = infinite_barrier_states(r.n, args.a, args.b, &grid)?;
                states.push((format!("n={} psi_L", r.n), r.energy, c.psi_l, true));
                states.push((format!("n={} psi_R", r.n), r.energy, c.psi_r, true));
                states.push((format!("n={} psi_minus (even)", r.n), r.energy, c.psi_minus, false));
                if rows.iter().any(|o| o.n == r.n && o.parity == Parity::Odd) {
                    states.push((format!("n={} psi_plus (odd)", r.n), r.energy, c.psi_plus, false));
                }
            }
        }
    }
    let energies: Vec<f64> = rows.iter().map(|r| r.energy).collect();
    let amplitude = states.iter().map(|s| s.2.max_abs()).fold(0.0, f64::max);
    let scale = stacking_scale(&energies, amplitude);
    let e_top = energies.last().copied().unwrap_or(0.0) + 2.0 * scale * amplitude;
    let wall = match barrier {
        Barrier::Finite(alpha) => alpha.min(1.2 * e_top),
        Barrier::Infinite => 1.2 * e_top,
    };
    let y_top = e_top.max(wall) * 1.05;
    let (a, b) = (args.a, args.b);

    let mut figure = FigureDocument::new(format!("Double well, alpha = {}", fmt_sig(args.alpha, 6)), "x", "E");
    figure.x_range = Some((-a - 0.05 * a, a + 0.05 * a));
    figure.y_range = Some((-0.05 * y_top, y_top));
    figure.curves.push(
        Curve::new(
            "V(x)",
            vec![
                (-a, y_top),
                (-a, 0.0),
                (-b, 0.0),
                (-b, wall),
                (b, wall),
                (b, 0.0),
                (a, 0.0),
                (a, y_top),
            ],
        )
        .with_stroke("#000"),
    );
    for (label, energy, state, dashed) in states {
        let mut curve = Curve::new(label, offset_state(&state, energy, scale)).with_energy(energy);
        if dashed {
            curve = curve.dashed();
        }
        figure.curves.push(curve);
    }
    Ok(figure)
}

use std::f64::consts::SQRT_2;

use clap::{Args, ValueEnum};
use sombrero_core::classical::{phase_portrait, SymmetryClass};

use super::{interval, potential_curve, CommandOutput, OutputArgs, PotentialArgs, RunConfig, UnitsArgs};
use crate::error::LabError;
use crate::figure::{Curve, FigureDocument};
use crate::format::fmt_sig;
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PortraitFigure {
    /// Orbits in the (x, p) plane.
    Phase,
    /// The potential itself.
    Potential,
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct PortraitArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Comma-separated orbit energies.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-0.1,0,0.5"
    )]
    pub energies: Vec<f64>,
    #[arg(long, value_enum, default_value = "phase")]
    pub figure: PortraitFigure,
    /// Interval scanned for allowed regions, as lo,hi.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub scan: Option<Vec<f64>>,
    /// Plotted interval of the potential figure, as lo,hi.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub range: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Keep every stride-th integration point.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
    /// Samples of the potential figure.
    #[arg(long, default_value_t = 3001)]
    pub samples: usize,
    #[command(flatten)]
    pub units: UnitsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn build(args: &PortraitArgs) -> Result<CommandOutput, LabError> {
    let config = RunConfig::new(&args.output, &args.units)?;
    match args.figure {
        PortraitFigure::Phase => phase(args, &config),
        PortraitFigure::Potential => potential(args, &config),
    }
}

fn phase(args: &PortraitArgs, config: &RunConfig) -> Result<CommandOutput, LabError> {
    if args.stride == 0 {
        return Err(LabError::Invalid("--stride must be positive".to_owned()));
    }
    if args.energies.is_empty() {
        return Err(LabError::Invalid("--energies is empty".to_owned()));
    }
    let units = config.units;
    let v = args.potential.build(units)?;
    let scan = interval(&args.scan, "scan", args.potential.default_domain(units))?;
    let entries = phase_portrait(&v, units.mass, &args.energies, scan, args.dt, args.steps)?;

    let mut out = CommandOutput::default();
    let mut table = Table::new(["curve", "energy", "symmetry", "component_lo", "component_hi", "x", "p"]);
    let mut figure = FigureDocument::new(format!("Phase portrait of {}", v.descriptor()), "x", "p");
    for entry in &entries {
        let e = fmt_sig(entry.energy, 6);
        let trajectory = match &entry.trajectory {
            Ok(t) => t,
            Err(err) => {
                out.warnings.push(format!("E = {e}: {err}"));
                continue;
            }
        };
        let last = trajectory.points.len().saturating_sub(1);
        let mut kept: Vec<(f64, f64)> = trajectory
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| i % args.stride == 0 || *i == last)
            .map(|(_, s)| (s.x, s.p))
            .collect();
        if trajectory.symmetry_class == SymmetryClass::Separatrix {
            // The orbit only approaches the saddle; its time reverse (x, -p)
            // closes the lobe.
            let reversed: Vec<(f64, f64)> = kept.iter().rev().map(|&(x, p)| (x, -p)).collect();
            kept.extend(reversed);
        }
        let curve = figure.curves.len();
        let (lo, hi) = trajectory.component_interval;
        for &(x, p) in &kept {
            table.push(vec![
                curve.into(),
                entry.energy.into(),
                trajectory.symmetry_class.as_str().into(),
                lo.into(),
                hi.into(),
                x.into(),
                p.into(),
            ])?;
        }
        let drift = trajectory.energy_drift(&v, units.mass);
        out.summary.push(format!(
            "E = {e}: {} orbit on [{}, {}], {} points, energy drift {drift:.2e}",
            trajectory.symmetry_class.as_str(),
            fmt_sig(lo, 6),
            fmt_sig(hi, 6),
            kept.len()
        ));
        figure
            .curves
            .push(Curve::new(format!("E={e} {}", trajectory.symmetry_class.as_str()), kept).with_energy(entry.energy));
    }
    if figure.curves.is_empty() {
        return Err(LabError::Numerical("no orbit could be integrated".to_owned()));
    }
    out.artifacts.extend(config.tables("phase_portrait", &table)?);
    out.artifacts.extend(config.figure("phase_portrait", &figure)?);
    Ok(out)
}

fn potential(args: &PortraitArgs, config: &RunConfig) -> Result<CommandOutput, LabError> {
    let units = config.units;
    let v = args.potential.build(units)?;
    let default = match args.potential.potential {
        super::PotentialKind::Sombrero => {
            let (_, hi) = args.potential.default_domain(units);
            let half = 0.3 * SQRT_2 * hi;
            (-half, half)
        }
        _ => args.potential.default_domain(units),
    };
    let range = interval(&args.range, "range", default)?;
    let points = potential_curve(&v, range, args.samples);
    let mut table = Table::new(["x", "v"]);
    for &(x, y) in &points {
        table.push(vec![x.into(), y.into()])?;
    }
    let mut figure = FigureDocument::new(v.descriptor(), "x", "V(x)");
    figure.curves.push(Curve::new("V(x)", points));
    for &e in &args.energies {
        figure.curves.push(
            Curve::new(format!("E={}", fmt_sig(e, 6)), vec![(range.0, e), (range.1, e)])
                .with_energy(e)
                .with_stroke("#888")
                .dashed(),
        );
    }
    let mut out = CommandOutput::default();
    out.summary.push(format!(
        "{} sampled at {} points on [{}, {}]",
        v.descriptor(),
        table.len(),
        range.0,
        range.1
    ));
    out.artifacts.extend(config.tables("potential", &table)?);
    out.artifacts.extend(config.figure("potential", &figure)?);
    Ok(out)
}

use clap::Args;
use sombrero_core::qm1d::{solve_spectrum, solve_spectrum_by_parity};
use sombrero_core::Grid;

use super::{
    interval, offset_state, potential_curve, stacking_scale, CommandOutput, OutputArgs, PotentialArgs, RunConfig,
    UnitsArgs,
};
use crate::error::LabError;
use crate::figure::{Curve, FigureDocument};
use crate::format::fmt_sig;
use crate::table::Table;

#[derive(Args, Clone, Debug, PartialEq)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Number of lowest levels.
    #[arg(long, default_value_t = 6)]
    pub levels: usize,
    /// Box as lo,hi; the wavefunction vanishes at both ends.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<f64>>,
    /// Grid points including the two walls.
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Diagonalise even and odd sectors separately (symmetric potentials only).
    #[arg(long)]
    pub by_parity: bool,
    #[command(flatten)]
    pub units: UnitsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn build(args: &SpectrumArgs) -> Result<CommandOutput, LabError> {
    let config = RunConfig::new(&args.output, &args.units)?;
    let units = config.units;
    if args.levels == 0 {
        return Err(LabError::Invalid("--levels must be positive".to_owned()));
    }
    let v = args.potential.build(units)?;
    let domain = interval(&args.domain, "domain", args.potential.default_domain(units))?;
    let grid = Grid::new(domain.0, domain.1, args.points)?;
    let spectrum = if args.by_parity {
        solve_spectrum_by_parity(&v, &grid, args.levels, units)?
    } else {
        solve_spectrum(&v, &grid, args.levels, units)?
    };

    let mut out = CommandOutput::default();
    if spectrum.leakage_warning {
        out.warnings
            .push("some states have not decayed at the box edges; widen --domain".to_owned());
    }
    let mut table = Table::new(["index", "energy", "parity", "asymmetry"]);
    for level in &spectrum.levels {
        table.push(vec![
            level.index.into(),
            level.energy.into(),
            level.parity.as_str().into(),
            level.asymmetry.into(),
        ])?;
        out.summary.push(format!(
            "E{} = {} ({})",
            level.index,
            fmt_sig(level.energy, 12),
            level.parity.as_str()
        ));
    }

    let energies = spectrum.energies();
    let amplitude = spectrum
        .levels
        .iter()
        .filter_map(|l| l.state.as_ref())
        .map(|s| s.max_abs())
        .fold(0.0, f64::max);
    let scale = stacking_scale(&energies, amplitude);
    let potential = potential_curve(&v, domain, 2001);
    let v_min = potential.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let top = energies.last().copied().unwrap_or(v_min) + scale * amplitude * 2.0;
    let mut figure = FigureDocument::new(spectrum.potential_descriptor.clone(), "x", "E");
    figure.x_range = Some(domain);
    if top > v_min {
        let pad = 0.05 * (top - v_min);
        figure.y_range = Some((v_min - pad, top + pad));
    }
    figure.curves.push(Curve::new("V(x)", potential).with_stroke("#000"));
    for level in &spectrum.levels {
        if let Some(state) = &level.state {
            figure.curves.push(
                Curve::new(
                    format!("n={} {}", level.index, level.parity.as_str()),
                    offset_state(state, level.energy, scale),
                )
                .with_energy(level.energy),
            );
        }
    }
    out.artifacts.extend(config.tables("spectrum", &table)?);
    out.artifacts.extend(config.figure("spectrum", &figure)?);
    Ok(out)
}

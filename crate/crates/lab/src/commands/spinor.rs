use clap::Args;
use sombrero_core::spinor::{
    decompose_with, find_degeneracies, group_levels, spinor_spectrum, Branch, OffsetConvention, SpinorSystem,
};

use super::{CommandOutput, OutputArgs, RunConfig, UnitsArgs};
use crate::error::LabError;
use crate::figure::{Curve, FigureDocument};
use crate::format::fmt_sig;
use crate::table::Table;

#[derive(Args, Clone, Debug, PartialEq)]
pub struct SpinorArgs {
    /// Frequency of the upper component.
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    pub omega_plus: f64,
    /// Frequency of the lower component.
    #[arg(long, default_value_t = 1.0)]
    pub omega_minus: f64,
    /// Highest energy listed.
    #[arg(long, default_value_t = 10.0)]
    pub e_max: f64,
    /// Largest quantum number searched for degeneracies.
    #[arg(long, default_value_t = 1000)]
    pub n_max: u64,
    /// Degeneracy tolerance; defaults to 1e-9 hbar min(omega).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub units: UnitsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn build(args: &SpinorArgs) -> Result<CommandOutput, LabError> {
    let config = RunConfig::new(&args.output, &args.units)?;
    let sys = SpinorSystem::new(args.omega_plus, args.omega_minus, config.units)?;
    let tol = args.tol.unwrap_or_else(|| sys.default_tolerance());
    let levels = spinor_spectrum(&sys, args.e_max)?;
    let groups = group_levels(&levels);
    let degeneracies = find_degeneracies(&sys, args.n_max, tol)?;
    let mut out = CommandOutput::default();

    let mut level_table = Table::new(["group", "energy", "branch", "n", "sigma3", "group_size"]);
    for (g, group) in groups.iter().enumerate() {
        for &(branch, n) in &group.labels {
            level_table.push(vec![
                g.into(),
                group.energy.into(),
                branch.as_str().into(),
                n.into(),
                i64::from(branch.sigma3()).into(),
                group.labels.len().into(),
            ])?;
        }
    }
    let shared = groups.iter().filter(|g| g.labels.len() > 1).count();
    out.summary.push(format!(
        "{} levels up to E = {}, {} degenerate group(s)",
        levels.len(),
        fmt_sig(args.e_max, 6),
        shared
    ));

    let mut degeneracy_table = Table::new(["n", "m", "mismatch"]);
    for d in &degeneracies {
        degeneracy_table.push(vec![d.n.into(), d.m.into(), d.mismatch.into()])?;
    }
    out.summary.push(format!(
        "{} excited-level degeneracies with n, m <= {} (tol {})",
        degeneracies.len(),
        args.n_max,
        fmt_sig(tol, 3)
    ));

    let mut decomposition = Table::new(["convention", "omega0", "omega_delta_sq", "eps0", "eps_delta"]);
    for (name, convention) in [
        ("corrected", OffsetConvention::Corrected),
        ("as_printed", OffsetConvention::AsPrinted),
    ] {
        let d = decompose_with(&sys, convention);
        decomposition.push(vec![
            name.into(),
            d.omega0.into(),
            d.omega_delta_sq.into(),
            d.eps0.into(),
            d.eps_delta.into(),
        ])?;
    }

    out.artifacts.extend(config.tables("spinor_levels", &level_table)?);
    out.artifacts.extend(config.tables("degeneracies", &degeneracy_table)?);
    out.artifacts.extend(config.tables("decomposition", &decomposition)?);

    let mut figure = FigureDocument::new("Spinor levels", "sigma3 = +1 (left), -1 (right)", "E");
    figure.x_range = Some((-0.5, 2.5));
    for level in &levels {
        let x0 = match level.branch {
            Branch::Plus => 0.0,
            Branch::Minus => 1.2,
        };
        figure.curves.push(
            Curve::new(
                format!("{} n={}", level.branch.as_str(), level.n),
                vec![(x0, level.energy), (x0 + 0.8, level.energy)],
            )
            .with_energy(level.energy)
            .with_stroke(if level.branch == Branch::Plus {
                "#1f77b4"
            } else {
                "#d62728"
            }),
        );
    }
    out.artifacts.extend(config.figure("spinor_levels", &figure)?);
    Ok(out)
}

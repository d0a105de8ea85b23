//! Subcommand implementations. Each builds its artifacts in memory; the caller
//! writes them with [`crate::output::write_artifacts`].

pub mod doublewell;
pub mod portrait;
pub mod spectrum;
pub mod spinor;

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use sombrero_core::qm1d::Potential;
use sombrero_core::{PotentialFn, TabulatedState, Units};

use crate::error::LabError;
use crate::figure::{render_svg, FigureDocument};
use crate::output::Artifact;
use crate::table::{Table, TableFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct OutputArgs {
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Comma-separated list of csv, json, svg.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,json,svg")]
    pub formats: Vec<Format>,
}

#[derive(Args, Clone, Copy, Debug, PartialEq)]
pub struct UnitsArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub mass: f64,
}

impl UnitsArgs {
    pub fn units(&self) -> Result<Units, LabError> {
        Ok(Units::new(self.hbar, self.mass)?)
    }
}

/// Settings shared by every model subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
    pub units: Units,
}

impl RunConfig {
    pub fn new(output: &OutputArgs, units: &UnitsArgs) -> Result<Self, LabError> {
        if output.formats.is_empty() {
            return Err(LabError::Invalid("--formats must name at least one format".to_owned()));
        }
        Ok(Self {
            out_dir: output.out.clone(),
            formats: output.formats.clone(),
            units: units.units()?,
        })
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    /// `stem.csv` and/or `stem.json`, as requested.
    pub fn tables(&self, stem: &str, table: &Table) -> Result<Vec<Artifact>, LabError> {
        let mut out = Vec::new();
        for (format, kind) in [(Format::Csv, TableFormat::Csv), (Format::Json, TableFormat::Json)] {
            if self.wants(format) {
                out.push(Artifact::new(
                    format!("{stem}.{}", kind.extension()),
                    table.encode(kind)?,
                ));
            }
        }
        Ok(out)
    }

    /// `stem.svg` when requested.
    pub fn figure(&self, stem: &str, figure: &FigureDocument) -> Result<Option<Artifact>, LabError> {
        if !self.wants(Format::Svg) {
            return Ok(None);
        }
        Ok(Some(Artifact::new(format!("{stem}.svg"), render_svg(figure)?)))
    }
}

/// Files to write plus lines for the terminal.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CommandOutput {
    pub artifacts: Vec<Artifact>,
    pub summary: Vec<String>,
    pub warnings: Vec<String>,
}

impl CommandOutput {
    pub fn artifact(&self, file_name: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.file_name == file_name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    Sombrero,
    Sextic,
    Harmonic,
    DoubleOscillator,
    Piecewise,
    Asymmetric,
}

/// Potential selection. Parameters that do not apply to the chosen kind are
/// ignored.
#[derive(Args, Clone, Copy, Debug, PartialEq)]
pub struct PotentialArgs {
    #[arg(long, value_enum, default_value = "sombrero")]
    pub potential: PotentialKind,
    /// Quartic coefficient (sombrero).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Quadratic coefficient (sombrero).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Sextic coefficient, oscillator separation, or outer wall (default 1, 1, 2).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Barrier half-width (piecewise, default 0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Barrier height (piecewise, default 200) or scale (asymmetric, default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Amplitude (asymmetric).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub nu: f64,
    /// Angular frequency (harmonic, double-oscillator).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega: f64,
    /// Constant subtracted from the harmonic potential.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub offset: f64,
}

impl PotentialArgs {
    pub fn build(&self, units: Units) -> Result<Potential, LabError> {
        let p = match self.potential {
            PotentialKind::Sombrero => Potential::sombrero(self.lambda, self.mu)?,
            PotentialKind::Sextic => Potential::sextic(self.a.unwrap_or(1.0), units)?,
            PotentialKind::Harmonic => Potential::harmonic(units.mass, self.omega, self.offset)?,
            PotentialKind::DoubleOscillator => {
                Potential::double_oscillator(units.mass, self.omega, self.a.unwrap_or(1.0))?
            }
            PotentialKind::Piecewise => Potential::piecewise_double_well(
                self.alpha.unwrap_or(200.0),
                self.a.unwrap_or(2.0),
                self.b.unwrap_or(0.5),
            )?,
            PotentialKind::Asymmetric => Potential::asymmetric_sinh(self.nu, self.alpha.unwrap_or(1.0))?,
        };
        Ok(p)
    }

    /// An interval holding the interesting part of the potential.
    pub fn default_domain(&self, units: Units) -> (f64, f64) {
        match self.potential {
            PotentialKind::Sombrero => {
                let x_min = (self.mu / (2.0 * self.lambda)).sqrt();
                (-5.0 * x_min, 5.0 * x_min)
            }
            PotentialKind::Sextic => (-3.0, 3.0),
            PotentialKind::Harmonic => {
                let width = 8.0 * (units.hbar / (units.mass * self.omega)).sqrt();
                (-width, width)
            }
            PotentialKind::DoubleOscillator => {
                let reach = self.a.unwrap_or(1.0).abs() + 6.0 * (units.hbar / (units.mass * self.omega)).sqrt();
                (-reach, reach)
            }
            PotentialKind::Piecewise => {
                let a = self.a.unwrap_or(2.0);
                (-a, a)
            }
            PotentialKind::Asymmetric => {
                let alpha = self.alpha.unwrap_or(1.0);
                (-4.0 / alpha, 6.0 / alpha)
            }
        }
    }
}

/// Reads a `lo,hi` pair given as a two-element list.
pub fn interval(values: &Option<Vec<f64>>, name: &str, default: (f64, f64)) -> Result<(f64, f64), LabError> {
    match values.as_deref() {
        None => Ok(default),
        Some(&[lo, hi]) if lo.is_finite() && hi.is_finite() && lo < hi => Ok((lo, hi)),
        Some(v) => Err(LabError::Invalid(format!(
            "--{name} needs two increasing finite values, got {v:?}"
        ))),
    }
}

/// Samples `v` at `n` points on `[lo, hi]`, keeping finite values only.
pub fn potential_curve(v: &dyn PotentialFn, (lo, hi): (f64, f64), n: usize) -> Vec<(f64, f64)> {
    let n = n.max(2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .map(|x| (x, v.value(x)))
        .filter(|(_, y)| y.is_finite())
        .collect()
}

/// `E + scale·ψ(x)`.
pub fn offset_state(state: &TabulatedState, energy: f64, scale: f64) -> Vec<(f64, f64)> {
    state
        .grid()
        .points()
        .zip(state.values())
        .map(|(x, y)| (x, energy + scale * y))
        .collect()
}

/// Amplitude for stacking states at their energies: a fraction of the mean
/// level spacing.
pub fn stacking_scale(energies: &[f64], max_amplitude: f64) -> f64 {
    let spread = match energies {
        [first, .., last] => (last - first) / (energies.len() - 1) as f64,
        [e] => 0.5 * e.abs(),
        [] => 1.0,
    };
    let spread = if spread > 0.0 { spread } else { 1.0 };
    if max_amplitude > 0.0 {
        0.4 * spread / max_amplitude
    } else {
        0.0
    }
}

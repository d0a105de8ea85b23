use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::commands::doublewell::{self, DoubleWellArgs};
use crate::commands::portrait::{self, PortraitArgs};
use crate::commands::spectrum::{self, SpectrumArgs};
use crate::commands::spinor::{self, SpinorArgs};
use crate::commands::CommandOutput;
use crate::error::{LabError, EXIT_NUMERICAL, EXIT_VALIDATION};
use crate::output::write_artifacts;
use crate::verify::run_suite;

/// Toy models of spontaneous symmetry breakdown: classical orbits, grid
/// spectra, the exact double well and the spinor model.
#[derive(Parser, Debug)]
#[command(name = "sombrero", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical phase portraits or the potential curve.
    Portrait(PortraitArgs),
    /// Finite-difference spectrum of a library potential.
    Spectrum(SpectrumArgs),
    /// Exact levels, gaps, threshold and states of the piecewise double well.
    Doublewell(DoubleWellArgs),
    /// Levels, degeneracies and decomposition of the spinor model.
    Spinor(SpinorArgs),
    /// Run the acceptance suite.
    Verify,
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status. Output goes to the given writers.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    if let Command::Verify = cli.command {
        return verify(stdout);
    }
    let (built, out_dir) = match &cli.command {
        Command::Portrait(a) => (portrait::build(a), &a.output.out),
        Command::Spectrum(a) => (spectrum::build(a), &a.output.out),
        Command::Doublewell(a) => (doublewell::build(a), &a.output.out),
        Command::Spinor(a) => (spinor::build(a), &a.output.out),
        Command::Verify => unreachable!(),
    };
    let result = built.and_then(|output: CommandOutput| {
        let paths = write_artifacts(out_dir, &output.artifacts)?;
        Ok((output, paths))
    });
    match result {
        Ok((output, paths)) => {
            for w in &output.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            for line in &output.summary {
                let _ = writeln!(stdout, "{line}");
            }
            for p in paths {
                let _ = writeln!(stdout, "wrote {}", p.display());
            }
            0
        }
        Err(e) => report(&e, stderr),
    }
}

fn report(e: &LabError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    e.exit_code()
}

fn verify(stdout: &mut dyn Write) -> i32 {
    let lines = run_suite();
    for line in &lines {
        let _ = writeln!(stdout, "{}", line.render());
    }
    let failed = lines.iter().filter(|l| !l.outcome.passed).count();
    let _ = writeln!(stdout, "{} of {} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        0
    } else {
        EXIT_NUMERICAL
    }
}

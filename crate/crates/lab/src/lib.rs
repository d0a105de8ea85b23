//! Files, figures and the command line for `sombrero-core`.
//!
//! Tables are written as CSV or JSON with 12 significant digits, figures as
//! standalone SVG with 6. The `sombrero` binary wraps [`cli::run`].

pub mod cli;
pub mod commands;
pub mod error;
pub mod figure;
pub mod format;
pub mod output;
pub mod table;
pub mod verify;

pub use error::LabError;
pub use figure::{extract_polylines, render_svg, Curve, FigureDocument};
pub use table::{write_table, Table, TableFormat};

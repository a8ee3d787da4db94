//! Library side of the `dyconvex` command: point files, JSON reports, SVG output
//! and the worked-example bundles.

pub mod pointfile;
pub mod report;
pub mod svg;
pub mod verify;

pub use pointfile::PointFile;
pub use report::{GensTarget, ReportDocument};

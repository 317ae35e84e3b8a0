//! File formats and the parameter-space scanner behind the command-line tool.

mod export;
mod maskfile;
mod pgm;
mod recipe;
mod scan;

pub use export::{fmt_real, read_plane_csv, write_cascade_csv, write_plane_csv, write_scan_csv};
pub use maskfile::{parse_mask, read_mask, render_mask, write_mask, MaskFile};
pub use pgm::{parse_pgm, read_pgm, render_pgm, write_pgm, Pgm};
pub use recipe::{bank_for, generate, MaskRecipe};
pub use scan::{scan_case1, scan_grid_angle, ScanOptions, ScanRecord};

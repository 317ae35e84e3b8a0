use std::io::Write;
use std::path::Path;

use crate::cascade::ScalingGrid;
use crate::dwt::ImagePlane;
use crate::error::{Error, Result};

use super::scan::ScanRecord;

/// Seventeen significant digits; parses back to the same bits.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_scan_csv<W: Write>(out: W, records: &[ScanRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "beta",
        "gamma",
        "qmf_residual",
        "unit_multiplicity",
        "spectral_gap",
        "cascade_delta",
        "error",
    ])?;
    for r in records {
        w.write_record([
            fmt_real(r.beta),
            fmt_real(r.gamma),
            opt(r.qmf_residual.map(fmt_real)),
            opt(r.unit_multiplicity),
            opt(r.spectral_gap.map(fmt_real)),
            opt(r.cascade_delta.map(fmt_real)),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One line per cell: indices, lower-left corner and sample value.
pub fn write_cascade_csv<W: Write>(out: W, grid: &ScalingGrid) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "x", "y", "phi"])?;
    let h = grid.step();
    for i in 0..grid.width {
        for j in 0..grid.height {
            w.write_record([
                i.to_string(),
                j.to_string(),
                fmt_real(i as f64 * h),
                fmt_real(j as f64 * h),
                fmt_real(grid.get(i, j)),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Headerless matrix, one image row per line.
pub fn write_plane_csv(path: impl AsRef<Path>, plane: &ImagePlane) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in plane.pixels.chunks(plane.width.max(1)) {
        w.write_record(row.iter().map(|v| fmt_real(*v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_plane_csv(path: impl AsRef<Path>) -> Result<ImagePlane> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path)?;
    let mut pixels = Vec::new();
    let mut width = None;
    let mut height = 0;
    for rec in r.records() {
        let rec = rec?;
        if *width.get_or_insert(rec.len()) != rec.len() {
            return Err(Error::DimensionMismatch(format!("row {height} has {} values", rec.len())));
        }
        for field in rec.iter() {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse(format!("bad number {field:?}")))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("non-finite value {field:?}")));
            }
            pixels.push(v);
        }
        height += 1;
    }
    ImagePlane::new(width.unwrap_or(0), height, pixels)
}

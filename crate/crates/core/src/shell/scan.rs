use std::f64::consts::TAU;

use crate::cascade::{autocorrelation_with, cascade_iterate_with, CascadeSeed};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lawton::{lawton_spectrum, DEFAULT_EIGEN_TOL};
use crate::masks::{case1_mask, Case1Params};
use crate::verify::{qmf_residual_on_grid, DEFAULT_GRID};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    /// How grid points are distributed; each point is computed sequentially.
    pub exec: Execution,
    pub levels: usize,
    pub seed: CascadeSeed,
    pub eigen_tol: f64,
    pub qmf_grid: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            exec: Execution::default(),
            levels: 6,
            seed: CascadeSeed::Box2,
            eigen_tol: DEFAULT_EIGEN_TOL,
            qmf_grid: DEFAULT_GRID,
        }
    }
}

/// Results at one `(beta, gamma)`; a failed stage leaves its fields empty and
/// the message in `error`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub beta: f64,
    pub gamma: f64,
    pub qmf_residual: Option<f64>,
    pub unit_multiplicity: Option<usize>,
    pub spectral_gap: Option<f64>,
    /// `max |<phi, phi(. - l)> - delta_l|` after the cascade.
    pub cascade_delta: Option<f64>,
    pub error: Option<String>,
}

/// `i`-th of `n` equally spaced angles in `[0, 2 pi)`.
pub fn scan_grid_angle(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

fn scan_point(beta: f64, gamma: f64, opts: &ScanOptions) -> ScanRecord {
    let mut rec = ScanRecord {
        beta,
        gamma,
        qmf_residual: None,
        unit_multiplicity: None,
        spectral_gap: None,
        cascade_delta: None,
        error: None,
    };
    let mut errors = Vec::new();
    match case1_mask(Case1Params::new(beta, gamma)) {
        Ok(mask) => {
            rec.qmf_residual = Some(qmf_residual_on_grid(&mask, opts.qmf_grid));
            match lawton_spectrum(&mask, opts.eigen_tol) {
                Ok(s) => {
                    rec.unit_multiplicity = Some(s.unit_multiplicity);
                    rec.spectral_gap = Some(s.spectral_gap);
                }
                Err(e) => errors.push(format!("lawton: {e}")),
            }
            match cascade_iterate_with(&mask, opts.levels, opts.seed, Execution::Sequential) {
                Ok(g) => {
                    rec.cascade_delta =
                        Some(autocorrelation_with(&g, Execution::Sequential).delta_distance())
                }
                Err(e) => errors.push(format!("cascade: {e}")),
            }
        }
        Err(e) => errors.push(format!("construction: {e}")),
    }
    if !errors.is_empty() {
        rec.error = Some(errors.join("; "));
    }
    rec
}

/// Case 1 on the `grid_n x grid_n` grid of angles, ordered by `(beta, gamma)`.
pub fn scan_case1(grid_n: usize, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    if grid_n < 2 {
        return Err(Error::ParameterOutOfDomain(format!("grid size {grid_n} < 2")));
    }
    Ok(opts.exec.map_range(grid_n * grid_n, |idx| {
        scan_point(scan_grid_angle(idx / grid_n, grid_n), scan_grid_angle(idx % grid_n, grid_n), opts)
    }))
}

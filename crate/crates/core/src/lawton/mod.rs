//! Transfer-matrix test for orthonormality of the integer shifts of the
//! scaling function, and the axis-cycle obstruction.

mod cycles;
pub mod eigen;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::masks::FilterMask;

pub use cycles::{axis_cycle_check, Axis, Cycle, CYCLE_TOL};

/// Largest mask side handled; shifts then range over `[-4, 4]^2`.
pub const MAX_SUPPORT: usize = 6;
pub const RADIUS: i32 = (MAX_SUPPORT as i32) - 2;
pub const SIDE: usize = 2 * RADIUS as usize + 1;
pub const DIM: usize = SIDE * SIDE;
pub const DEFAULT_EIGEN_TOL: f64 = 1e-8;

/// Flat index of shift `(l1, l2)`: `(l1 + 4) * 9 + (l2 + 4)`.
pub fn shift_index(l1: i32, l2: i32) -> usize {
    ((l1 + RADIUS) as usize) * SIDE + (l2 + RADIUS) as usize
}

pub fn index_shift(i: usize) -> (i32, i32) {
    ((i / SIDE) as i32 - RADIUS, (i % SIDE) as i32 - RADIUS)
}

/// `A[(l), (n)] = 4 sum_k h_k h_{k + n - 2l}` on shifts in `[-4, 4]^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LawtonMatrix {
    pub entries: Vec<f64>,
}

impl LawtonMatrix {
    pub fn dim(&self) -> usize {
        DIM
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * DIM + col]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(DIM)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Unit vector at shift `(0, 0)`.
pub fn delta() -> Vec<f64> {
    let mut d = vec![0.0; DIM];
    d[shift_index(0, 0)] = 1.0;
    d
}

fn tap_autocorrelation(mask: &FilterMask, d1: i32, d2: i32) -> f64 {
    let (r, c) = (mask.rows() as i32, mask.cols() as i32);
    let mut acc = 0.0;
    for k1 in 0.max(-d1)..r.min(r - d1) {
        for k2 in 0.max(-d2)..c.min(c - d2) {
            acc += mask.get(k1 as usize, k2 as usize)
                * mask.get((k1 + d1) as usize, (k2 + d2) as usize);
        }
    }
    acc
}

pub fn build_lawton_matrix(mask: &FilterMask) -> Result<LawtonMatrix> {
    if mask.rows() > MAX_SUPPORT || mask.cols() > MAX_SUPPORT {
        return Err(Error::SupportTooLarge {
            rows: mask.rows(),
            cols: mask.cols(),
            max: MAX_SUPPORT,
        });
    }
    let span = MAX_SUPPORT as i32;
    let w = (2 * span - 1) as usize;
    let mut corr = vec![0.0; w * w];
    for d1 in -(span - 1)..span {
        for d2 in -(span - 1)..span {
            corr[((d1 + span - 1) as usize) * w + (d2 + span - 1) as usize] =
                tap_autocorrelation(mask, d1, d2);
        }
    }
    let mut entries = vec![0.0; DIM * DIM];
    for row in 0..DIM {
        let (l1, l2) = index_shift(row);
        for col in 0..DIM {
            let (n1, n2) = index_shift(col);
            let (d1, d2) = (n1 - 2 * l1, n2 - 2 * l2);
            if d1.abs() < span && d2.abs() < span {
                entries[row * DIM + col] =
                    4.0 * corr[((d1 + span - 1) as usize) * w + (d2 + span - 1) as usize];
            }
        }
    }
    Ok(LawtonMatrix { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Orthonormal,
    Degenerate,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Orthonormal => "orthonormal",
            Verdict::Degenerate => "degenerate",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    /// Sorted by distance from 1, then real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub tol: f64,
    pub unit_multiplicity: usize,
    /// Distance from 1 to the nearest eigenvalue outside the unit cluster.
    pub spectral_gap: f64,
    pub verdict: Verdict,
}

/// Spectrum of `a` with the multiplicity of eigenvalue 1.
///
/// Orthonormal needs exactly one eigenvalue within `tol` of 1 and a gap of
/// at least `10 tol`; a smaller gap is inconclusive.
pub fn unit_eigenvalue_multiplicity(a: &LawtonMatrix, tol: f64) -> Result<SpectrumReport> {
    let mut eigenvalues = eigen::eigenvalues(&a.entries, DIM)?;
    let one = Complex64::new(1.0, 0.0);
    eigenvalues.sort_by(|x, y| {
        (x - one)
            .norm()
            .total_cmp(&(y - one).norm())
            .then(x.re.total_cmp(&y.re))
            .then(x.im.total_cmp(&y.im))
    });
    let unit_multiplicity = eigenvalues.iter().filter(|e| (*e - one).norm() < tol).count();
    let spectral_gap = eigenvalues
        .iter()
        .map(|e| (e - one).norm())
        .filter(|d| *d >= tol)
        .fold(f64::INFINITY, f64::min);
    let verdict = match unit_multiplicity {
        0 => Verdict::Inconclusive,
        1 if spectral_gap >= 10.0 * tol => Verdict::Orthonormal,
        1 => Verdict::Inconclusive,
        _ => Verdict::Degenerate,
    };
    Ok(SpectrumReport { eigenvalues, tol, unit_multiplicity, spectral_gap, verdict })
}

/// Convenience: build the matrix and analyze its spectrum.
pub fn lawton_spectrum(mask: &FilterMask, tol: f64) -> Result<SpectrumReport> {
    unit_eigenvalue_multiplicity(&build_lawton_matrix(mask)?, tol)
}

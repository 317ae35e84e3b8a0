//! Conditions a scaling mask must meet, checked both on the polyphase
//! coefficients and on a frequency grid.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::masks::{polyphase_split, FilterMask, PolyphaseCoeffs};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 64;
pub const DERIVATIVE_SAMPLES: usize = 16;

/// Shift classes of the 6x6 orthogonality equations on the 3x3 grid, in
/// equation order. The zero shift (sum of squares) comes last.
pub const SHIFTS_6: [(i32, i32); 12] = [
    (2, 2),
    (2, -2),
    (2, -1),
    (2, 1),
    (1, -2),
    (1, 2),
    (2, 0),
    (0, 2),
    (1, -1),
    (1, 1),
    (1, 0),
    (0, 1),
];

/// Shift classes of the 8x8 orthogonality equations on the 4x4 grid.
pub const SHIFTS_8: [(i32, i32); 24] = [
    (3, 3),
    (3, -3),
    (2, 3),
    (3, 2),
    (3, -2),
    (2, -3),
    (1, 3),
    (3, 1),
    (3, -1),
    (1, -3),
    (0, 3),
    (2, 2),
    (3, 0),
    (2, -2),
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (2, 0),
    (0, 2),
    (1, 1),
    (1, -1),
    (0, 1),
    (1, 0),
];

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub tol: f64,
    pub existence_residual: f64,
    pub symmetry_residual: f64,
    /// Present for centro-symmetric 6x6 and 8x8 masks.
    pub orthogonality_residuals: Option<Vec<f64>>,
    pub moment_residuals: Option<Vec<f64>>,
    pub vanishing_moment_residual: f64,
    pub qmf_grid_max_residual: f64,
}

impl VerificationReport {
    pub fn existence_pass(&self) -> bool {
        self.existence_residual < self.tol
    }

    pub fn symmetry_pass(&self) -> bool {
        self.symmetry_residual < self.tol
    }

    pub fn orthogonality_pass(&self) -> bool {
        self.orthogonality_residuals
            .as_ref()
            .map_or(true, |r| max_of(r) < self.tol)
    }

    pub fn moments_pass(&self) -> bool {
        self.moment_residuals
            .as_ref()
            .map_or(true, |r| max_of(r) < self.tol)
            && self.vanishing_moment_residual < self.tol
    }

    pub fn qmf_pass(&self) -> bool {
        self.qmf_grid_max_residual < self.tol
    }

    pub fn pass(&self) -> bool {
        self.existence_pass()
            && self.symmetry_pass()
            && self.orthogonality_pass()
            && self.moments_pass()
            && self.qmf_pass()
    }
}

pub(crate) fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

/// Runs every check on `mask`. Polyphase equations are evaluated only when
/// the mask is a centro-symmetric 6x6 or 8x8 grid.
pub fn verify_mask(mask: &FilterMask, tol: f64, grid_n: usize) -> VerificationReport {
    let square = mask.rows() == mask.cols();
    let symmetry_residual = if square {
        crate::masks::polyphase::centro_residual(mask)
    } else {
        f64::INFINITY
    };
    let poly = polyphase_split(mask).ok();
    VerificationReport {
        tol,
        existence_residual: check_existence(mask),
        symmetry_residual,
        orthogonality_residuals: poly.as_ref().map(check_orthogonality_equations),
        moment_residuals: poly.as_ref().map(linear_moment_residuals),
        vanishing_moment_residual: check_vanishing_moments(mask, 1),
        qmf_grid_max_residual: qmf_residual_on_grid(mask, grid_n),
    }
}

pub fn check_existence(mask: &FilterMask) -> f64 {
    (mask.sum() - 1.0).abs()
}

/// Max centro-symmetry defect of an `(n+1) x (n+1)` mask.
pub fn check_symmetry(mask: &FilterMask, n: usize) -> Result<f64> {
    if mask.rows() != n + 1 || mask.cols() != n + 1 {
        return Err(Error::WrongSize {
            expected: format!("{0}x{0}", n + 1),
            got: format!("{}x{}", mask.rows(), mask.cols()),
        });
    }
    Ok(crate::masks::polyphase::centro_residual(mask))
}

/// Sum over both polyphase grids of the autocorrelation at `shift`.
pub fn shift_correlation(p: &PolyphaseCoeffs, shift: (i32, i32)) -> f64 {
    let s = p.side as i32;
    let mut acc = 0.0;
    for which in 0..2 {
        let nu = p.nu(which);
        for r in 0..s {
            for c in 0..s {
                let (r2, c2) = (r + shift.0, c + shift.1);
                if (0..s).contains(&r2) && (0..s).contains(&c2) {
                    acc += nu[(r * s + c) as usize] * nu[(r2 * s + c2) as usize];
                }
            }
        }
    }
    acc
}

/// Absolute residuals of the orthogonality system: one per nonzero shift
/// class, then `|sum nu^2 - 1/8|`. 13 values for 6x6, 25 for 8x8.
pub fn check_orthogonality_equations(p: &PolyphaseCoeffs) -> Vec<f64> {
    let shifts: &[(i32, i32)] = if p.side == 4 { &SHIFTS_8 } else { &SHIFTS_6 };
    let mut out: Vec<f64> = shifts
        .iter()
        .map(|&d| shift_correlation(p, d).abs())
        .collect();
    out.push((shift_correlation(p, (0, 0)) - 0.125).abs());
    out
}

/// `|2 (sum a + sum b) - 1|`.
pub fn sum_residual(p: &PolyphaseCoeffs) -> f64 {
    let total: f64 = p.a.iter().chain(&p.b).sum();
    (2.0 * total - 1.0).abs()
}

/// The linear equations from one vanishing moment: row sums of `a` equal
/// those of `b`, then column `c` of `a` equals column `side-1-c` of `b`.
pub fn linear_moment_residuals(p: &PolyphaseCoeffs) -> Vec<f64> {
    let s = p.side;
    let row = |v: &[f64], r: usize| (0..s).map(|c| v[s * r + c]).sum::<f64>();
    let col = |v: &[f64], c: usize| (0..s).map(|r| v[s * r + c]).sum::<f64>();
    let mut out = Vec::with_capacity(2 * s);
    for r in 0..s {
        out.push((row(&p.a, r) - row(&p.b, r)).abs());
    }
    for c in 0..s {
        out.push((col(&p.a, c) - col(&p.b, s - 1 - c)).abs());
    }
    out
}

fn falling(j: usize, k: usize) -> f64 {
    (0..k).map(|i| j as f64 - i as f64).product()
}

/// Max over `k < m` of `|d^k/dx^k m(x, y)|` at `x = -1` for 16 unit-circle
/// samples of `y`, and the same with the roles of `x` and `y` swapped.
pub fn check_vanishing_moments(mask: &FilterMask, m: usize) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..m {
        for t in 0..DERIVATIVE_SAMPLES {
            let z = Complex64::from_polar(1.0, TAU * t as f64 / DERIVATIVE_SAMPLES as f64);
            worst = worst.max(derivative_trace(mask, k, z).norm());
            worst = worst.max(derivative_trace(&mask.transpose(), k, z).norm());
        }
    }
    worst
}

fn derivative_trace(mask: &FilterMask, k: usize, y: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in k..mask.rows() {
        let w = falling(j, k) * if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
        let mut row = Complex64::new(0.0, 0.0);
        for l in (0..mask.cols()).rev() {
            row = row * y + mask.get(j, l);
        }
        acc += row * w;
    }
    acc
}

/// Values of `m(e^{i w1}, e^{i w2})` on the uniform `n x n` grid over
/// `[0, 2pi)^2`, row index = `w1`.
pub fn frequency_grid(mask: &FilterMask, n: usize) -> Vec<Complex64> {
    let phase: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(1.0, TAU * i as f64 / n as f64))
        .collect();
    // partial[i2 * rows + j] = sum_k c[j][k] y^k
    let mut partial = vec![Complex64::new(0.0, 0.0); n * mask.rows()];
    for (i2, y) in phase.iter().enumerate() {
        for j in 0..mask.rows() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in (0..mask.cols()).rev() {
                acc = acc * y + mask.get(j, k);
            }
            partial[i2 * mask.rows() + j] = acc;
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for (i1, x) in phase.iter().enumerate() {
        for i2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in (0..mask.rows()).rev() {
                acc = acc * x + partial[i2 * mask.rows() + j];
            }
            out[i1 * n + i2] = acc;
        }
    }
    out
}

/// Max over the `grid_n x grid_n` frequency grid of
/// `| |m(x,y)|^2 + |m(-x,y)|^2 + |m(x,-y)|^2 + |m(-x,-y)|^2 - 1 |`.
pub fn qmf_residual_on_grid(mask: &FilterMask, grid_n: usize) -> f64 {
    let n = grid_n.max(2);
    if n % 2 == 0 {
        let vals = frequency_grid(mask, n);
        let h = n / 2;
        let at = |i: usize, j: usize| vals[(i % n) * n + (j % n)].norm_sqr();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let s = at(i, j) + at(i + h, j) + at(i, j + h) + at(i + h, j + h);
                worst = worst.max((s - 1.0).abs());
            }
        }
        worst
    } else {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let w1 = TAU * i as f64 / n as f64;
                let w2 = TAU * j as f64 / n as f64;
                let pi = std::f64::consts::PI;
                let s = mask.eval_freq(w1, w2).norm_sqr()
                    + mask.eval_freq(w1 + pi, w2).norm_sqr()
                    + mask.eval_freq(w1, w2 + pi).norm_sqr()
                    + mask.eval_freq(w1 + pi, w2 + pi).norm_sqr();
                worst = worst.max((s - 1.0).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masks::{haar_mask, polyphase_assemble};

    #[test]
    fn haar_checks() {
        let h = haar_mask();
        assert_eq!(check_existence(&h), 0.0);
        assert_eq!(check_existence(&h.scaled(2.0)), 1.0);
        assert_eq!(check_symmetry(&h, 1).unwrap(), 0.0);
        assert!(check_symmetry(&h, 5).is_err());
        assert!(qmf_residual_on_grid(&h, 64) < 1e-15);
        assert_eq!(check_vanishing_moments(&h, 1), 0.0);
        let scaled = qmf_residual_on_grid(&h.scaled(1.01), 64);
        assert!((scaled - (1.01f64.powi(2) - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn perturbed_tap_shows_in_symmetry() {
        let mut h = haar_mask();
        h.set(0, 1, 0.25 + 1e-3);
        assert!((check_symmetry(&h, 1).unwrap() - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn zero_coefficients() {
        let r = check_orthogonality_equations(&PolyphaseCoeffs::zeros(3));
        assert_eq!(r.len(), 13);
        assert_eq!(r[12], 0.125);
        assert!(r[..12].iter().all(|&v| v == 0.0));
        assert_eq!(check_orthogonality_equations(&PolyphaseCoeffs::zeros(4)).len(), 25);
    }

    #[test]
    fn shift_tables_cover_half_plane() {
        for (side, table) in [(3i32, &SHIFTS_6[..]), (4, &SHIFTS_8[..])] {
            let mut want = Vec::new();
            for dr in 0..side {
                for dc in -(side - 1)..side {
                    if dr > 0 || dc > 0 {
                        want.push((dr, dc));
                    }
                }
            }
            let mut got = table.to_vec();
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    // Printed form of the first orthogonality equations, written out pairwise.
    #[test]
    fn shift_classes_match_pairwise_forms() {
        let a: Vec<f64> = (0..9).map(|i| 0.1 + 0.07 * i as f64).collect();
        let b: Vec<f64> = (0..9).map(|i| -0.2 + 0.05 * (i * i) as f64).collect();
        let p = PolyphaseCoeffs::new(3, a.clone(), b.clone()).unwrap();
        let r = check_orthogonality_equations(&p);
        let pair = |pairs: &[(usize, usize)]| {
            pairs.iter().map(|&(i, j)| a[i] * a[j] + b[i] * b[j]).sum::<f64>().abs()
        };
        assert!((r[0] - pair(&[(0, 8)])).abs() < 1e-15);
        assert!((r[1] - pair(&[(2, 6)])).abs() < 1e-15);
        assert!((r[2] - pair(&[(1, 6), (2, 7)])).abs() < 1e-15);
        assert!((r[5] - pair(&[(0, 5), (3, 8)])).abs() < 1e-15);
        assert!((r[8] - pair(&[(1, 3), (2, 4), (4, 6), (5, 7)])).abs() < 1e-15);
        assert!(
            (r[11] - pair(&[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)])).abs() < 1e-15
        );
    }

    #[test]
    fn linear_equations_agree_with_derivative_form() {
        let a: Vec<f64> = (0..9).map(|i| (i as f64 * 0.37).sin() / 8.0).collect();
        let b: Vec<f64> = (0..9).map(|i| (i as f64 * 0.91).cos() / 8.0).collect();
        let p = PolyphaseCoeffs::new(3, a, b).unwrap();
        let m = polyphase_assemble(&p);
        let lin = max_of(&linear_moment_residuals(&p));
        assert!(lin > 1e-3);
        assert!(check_vanishing_moments(&m, 1) > 1e-3);
    }
}

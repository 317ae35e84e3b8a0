use crate::error::{Error, Result};
use crate::masks::FilterMask;

/// Tolerance for the centro-symmetry test in `polyphase_split`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// The distinct values of a centro-symmetric `2s x 2s` mask.
///
/// Even row `2r` reads `a[s*r] b[s*r] a[s*r+1] b[s*r+1] ...`; odd rows are
/// the point reflection of even rows. `side` is 3 for 6x6 masks and 4 for
/// 8x8 masks. `a[i]` and `b[i]` sit at cell `(i / side, i % side)` of a
/// `side x side` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyphaseCoeffs {
    pub side: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl PolyphaseCoeffs {
    pub fn new(side: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let n = side * side;
        if side < 1 || a.len() != n || b.len() != n {
            return Err(Error::WrongSize {
                expected: format!("{n} a-values and {n} b-values"),
                got: format!("{} and {}", a.len(), b.len()),
            });
        }
        Ok(PolyphaseCoeffs { side, a, b })
    }

    pub fn zeros(side: usize) -> Self {
        PolyphaseCoeffs { side, a: vec![0.0; side * side], b: vec![0.0; side * side] }
    }

    pub fn mask_size(&self) -> usize {
        2 * self.side
    }

    /// Value of `nu[row][col]` on the `side x side` grid, `nu` = 0 for a.
    pub(crate) fn nu(&self, which: usize) -> &[f64] {
        if which == 0 {
            &self.a
        } else {
            &self.b
        }
    }
}

pub fn polyphase_assemble(p: &PolyphaseCoeffs) -> FilterMask {
    let s = p.side;
    let n = 2 * s;
    let mut m = FilterMask::zeros(n, n);
    for r in 0..s {
        for c in 0..n {
            let i = s * r + c / 2;
            let v = if c % 2 == 0 { p.a[i] } else { p.b[i] };
            m.set(2 * r, c, v);
            m.set(n - 1 - 2 * r, n - 1 - c, v);
        }
    }
    m
}

/// Splits a centro-symmetric `2s x 2s` mask (s = 3 or 4) into its polyphase
/// values.
pub fn polyphase_split(mask: &FilterMask) -> Result<PolyphaseCoeffs> {
    let n = mask.rows();
    if n != mask.cols() || !(n == 6 || n == 8) {
        return Err(Error::WrongSize {
            expected: "6x6 or 8x8".into(),
            got: format!("{}x{}", mask.rows(), mask.cols()),
        });
    }
    let sym = centro_residual(mask);
    if sym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(sym));
    }
    let s = n / 2;
    let mut p = PolyphaseCoeffs::zeros(s);
    for r in 0..s {
        for c in 0..n {
            let i = s * r + c / 2;
            let v = mask.get(2 * r, c);
            if c % 2 == 0 {
                p.a[i] = v;
            } else {
                p.b[i] = v;
            }
        }
    }
    Ok(p)
}

pub(crate) fn centro_residual(mask: &FilterMask) -> f64 {
    let (r, c) = (mask.rows(), mask.cols());
    let mut worst = 0.0f64;
    for j in 0..r {
        for k in 0..c {
            worst = worst.max((mask.get(j, k) - mask.get(r - 1 - j, c - 1 - k)).abs());
        }
    }
    worst
}

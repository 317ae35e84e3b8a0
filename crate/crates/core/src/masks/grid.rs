use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rectangular grid of real filter taps.
///
/// `coeffs` is row-major; entry `(j, k)` is the coefficient of
/// `x^(j - origin.0) y^(k - origin.1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterMask {
    rows: usize,
    cols: usize,
    origin: (i32, i32),
    coeffs: Vec<f64>,
}

impl FilterMask {
    pub fn new(rows: usize, cols: usize, coeffs: Vec<f64>) -> Result<Self> {
        Self::with_origin(rows, cols, (0, 0), coeffs)
    }

    pub fn with_origin(
        rows: usize,
        cols: usize,
        origin: (i32, i32),
        coeffs: Vec<f64>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 || coeffs.len() != rows * cols {
            return Err(Error::WrongSize {
                expected: format!("{rows}x{cols} = {} finite values", rows * cols),
                got: format!("{} values", coeffs.len()),
            });
        }
        if let Some(v) = coeffs.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("non-finite coefficient {v}")));
        }
        Ok(FilterMask { rows, cols, origin, coeffs })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::WrongSize {
                expected: format!("rectangular grid with {c} columns"),
                got: "ragged rows".into(),
            });
        }
        Self::new(r, c, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FilterMask { rows, cols, origin: (0, 0), coeffs: vec![0.0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn origin(&self) -> (i32, i32) {
        self.origin
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.coeffs[j * self.cols + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: f64) {
        self.coeffs[j * self.cols + k] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.coeffs.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= factor);
        out
    }

    /// Evaluates the Laurent polynomial at complex `(x, y)`.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (0..self.rows).rev() {
            let mut row = Complex64::new(0.0, 0.0);
            for k in (0..self.cols).rev() {
                row = row * y + self.get(j, k);
            }
            acc = acc * x + row;
        }
        acc * x.powi(-self.origin.0) * y.powi(-self.origin.1)
    }

    /// Evaluates at `x = e^{i w1}`, `y = e^{i w2}`.
    pub fn eval_freq(&self, w1: f64, w2: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, w1), Complex64::from_polar(1.0, w2))
    }

    pub fn transpose(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.cols {
            for j in 0..self.rows {
                coeffs.push(self.get(j, k));
            }
        }
        FilterMask {
            rows: self.cols,
            cols: self.rows,
            origin: (self.origin.1, self.origin.0),
            coeffs,
        }
    }

    /// Copies this mask into a zero `rows x cols` grid at `offset`, keeping
    /// the same polynomial up to the monomial `x^offset.0 y^offset.1`.
    pub fn embed(&self, rows: usize, cols: usize, offset: (usize, usize)) -> Result<Self> {
        if offset.0 + self.rows > rows || offset.1 + self.cols > cols {
            return Err(Error::WrongSize {
                expected: format!("fits in {rows}x{cols} at {offset:?}"),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let mut out = FilterMask::zeros(rows, cols);
        for j in 0..self.rows {
            for k in 0..self.cols {
                out.set(j + offset.0, k + offset.1, self.get(j, k));
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &FilterMask) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mask_strategy() -> impl Strategy<Value = FilterMask> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-1.0f64..1.0, r * c)
                .prop_map(move |v| FilterMask::new(r, c, v).unwrap())
        })
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(FilterMask::new(2, 2, vec![0.0; 3]).is_err());
        assert!(FilterMask::new(1, 1, vec![f64::NAN]).is_err());
        assert!(FilterMask::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn eval_matches_power_sum() {
        let m = FilterMask::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let x = Complex64::new(0.3, -0.7);
        let y = Complex64::new(-1.1, 0.2);
        let direct = 1.0 + 2.0 * y + 3.0 * x + 4.0 * x * y;
        assert!((m.eval(x, y) - direct).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn transpose_is_involution(m in mask_strategy()) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn transpose_swaps_arguments(m in mask_strategy(), w1 in 0.0f64..6.3, w2 in 0.0f64..6.3) {
            let d = m.eval_freq(w1, w2) - m.transpose().eval_freq(w2, w1);
            prop_assert!(d.norm() < 1e-12);
        }

        #[test]
        fn embed_multiplies_by_monomial(m in mask_strategy(), w1 in 0.0f64..6.3, w2 in 0.0f64..6.3) {
            let e = m.embed(8, 8, (1, 2)).unwrap();
            let shift = Complex64::from_polar(1.0, w1 + 2.0 * w2);
            prop_assert!((e.eval_freq(w1, w2) - m.eval_freq(w1, w2) * shift).norm() < 1e-12);
        }
    }
}

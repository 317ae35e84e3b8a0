use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::masks::polyphase::centro_residual;
use crate::masks::FilterMask;

/// Scaling mask plus three wavelet masks.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveletBank {
    pub scaling: FilterMask,
    pub wavelets: [FilterMask; 3],
}

impl WaveletBank {
    pub fn filters(&self) -> [&FilterMask; 4] {
        [&self.scaling, &self.wavelets[0], &self.wavelets[1], &self.wavelets[2]]
    }
}

const BANK_SYMMETRY_TOL: f64 = 1e-10;

/// Wavelets `m(-x, y)`, `x m(x, -y)` and `x m(-x, -y)` of a centro-symmetric
/// mask with an even number of rows.
pub fn derive_wavelet_bank(scaling: &FilterMask) -> Result<WaveletBank> {
    let (r, c) = (scaling.rows(), scaling.cols());
    if r != c {
        return Err(Error::NotSymmetric(f64::INFINITY));
    }
    let sym = centro_residual(scaling);
    if sym > BANK_SYMMETRY_TOL {
        return Err(Error::NotSymmetric(sym));
    }
    let sign = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut m1 = FilterMask::zeros(r, c);
    let mut m2 = FilterMask::zeros(r + 1, c);
    let mut m3 = FilterMask::zeros(r + 1, c);
    for j in 0..r {
        for k in 0..c {
            let v = scaling.get(j, k);
            m1.set(j, k, sign(j) * v);
            m2.set(j + 1, k, sign(k) * v);
            m3.set(j + 1, k, sign(j + k) * v);
        }
    }
    Ok(WaveletBank { scaling: scaling.clone(), wavelets: [m1, m2, m3] })
}

/// Separable bank from a 1D lowpass `d` with unit sum and even length:
/// highpass `g[k] = (-1)^k d[L-1-k]`, filters `d*d`, `g*d`, `d*g`, `g*g`.
pub fn tensor_bank_1d(d: &[f64]) -> Result<WaveletBank> {
    let n = d.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::WrongSize {
            expected: "even-length lowpass".into(),
            got: format!("length {n}"),
        });
    }
    let g: Vec<f64> = (0..n)
        .map(|k| if k % 2 == 0 { d[n - 1 - k] } else { -d[n - 1 - k] })
        .collect();
    let outer = |x: &[f64], y: &[f64]| {
        let coeffs = x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect();
        FilterMask::new(n, n, coeffs)
    };
    Ok(WaveletBank {
        scaling: outer(d, d)?,
        wavelets: [outer(&g, d)?, outer(d, &g)?, outer(&g, &g)?],
    })
}

/// `max |U U^H - I|` for the 4x4 matrix `U[i][s] = m_i(sigma_s(x, y))`, with
/// `sigma_s` the four sign flips of `(x, y) = (e^{i w1}, e^{i w2})`.
pub fn modulation_unitarity_residual(bank: &WaveletBank, w1: f64, w2: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let shifts = [(0.0, 0.0), (pi, 0.0), (0.0, pi), (pi, pi)];
    let u: Vec<Vec<Complex64>> = bank
        .filters()
        .iter()
        .map(|f| shifts.iter().map(|(s1, s2)| f.eval_freq(w1 + s1, w2 + s2)).collect())
        .collect();
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let dot: Complex64 = (0..4).map(|s| u[i][s] * u[j][s].conj()).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - want).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masks::{case1_mask, d4_taps, haar_mask, Case1Params};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_wavelets() {
        let b = derive_wavelet_bank(&haar_mask()).unwrap();
        assert_eq!(b.wavelets[0].to_rows(), vec![vec![0.25, 0.25], vec![-0.25, -0.25]]);
        assert_eq!(
            b.wavelets[1].to_rows(),
            vec![vec![0.0, 0.0], vec![0.25, -0.25], vec![0.25, -0.25]]
        );
        assert_eq!(
            b.wavelets[2].to_rows(),
            vec![vec![0.0, 0.0], vec![0.25, -0.25], vec![-0.25, 0.25]]
        );
    }

    #[test]
    fn wavelet_definitions_hold() {
        let m = case1_mask(Case1Params::new(0.7, 2.9)).unwrap();
        let b = derive_wavelet_bank(&m).unwrap();
        let pi = std::f64::consts::PI;
        for (w1, w2) in [(0.3, 1.9), (2.2, -0.4), (5.0, 4.1)] {
            let x = num_complex::Complex64::from_polar(1.0, w1);
            assert!((b.wavelets[0].eval_freq(w1, w2) - m.eval_freq(w1 + pi, w2)).norm() < 1e-13);
            assert!((b.wavelets[1].eval_freq(w1, w2) - x * m.eval_freq(w1, w2 + pi)).norm() < 1e-13);
            assert!(
                (b.wavelets[2].eval_freq(w1, w2) - x * m.eval_freq(w1 + pi, w2 + pi)).norm() < 1e-13
            );
        }
    }

    #[test]
    fn case1_modulation_matrix_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = case1_mask(Case1Params::new(2.0, 0.3)).unwrap();
        let b = derive_wavelet_bank(&m).unwrap();
        for _ in 0..64 {
            let (w1, w2) = (rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
            assert!(modulation_unitarity_residual(&b, w1, w2) < 1e-12);
        }
    }

    #[test]
    fn tensor_d4_unitary_and_asymmetric_rejected() {
        let b = tensor_bank_1d(&d4_taps()).unwrap();
        for i in 0..16 {
            assert!(modulation_unitarity_residual(&b, 0.4 * i as f64, 1.0 - 0.3 * i as f64) < 1e-14);
        }
        assert!(matches!(derive_wavelet_bank(&b.scaling), Err(Error::NotSymmetric(_))));
        assert!(tensor_bank_1d(&[1.0, 2.0, 3.0]).is_err());
    }
}

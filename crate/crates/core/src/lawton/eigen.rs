//! Eigenvalues of a dense real nonsymmetric matrix: balancing, Householder
//! reduction to upper Hessenberg form, then the Francis double-shift QR
//! iteration. Eigenvectors are not computed.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Defective clusters near zero (common in transfer matrices) need far more
// sweeps than the textbook limit of 30.
const MAX_ITS_PER_EIGENVALUE: usize = 500;

/// Eigenvalues of the row-major `n x n` matrix `a`.
pub fn eigenvalues(a: &[f64], n: usize) -> Result<Vec<Complex64>> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut m: Vec<Vec<f64>> = a.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
    if n == 0 {
        return Ok(Vec::new());
    }
    balance(&mut m);
    hessenberg(&mut m);
    hqr(&mut m)
}

fn balance(a: &mut [Vec<f64>]) {
    const RADIX: f64 = 2.0;
    let n = a.len();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    a[i].iter_mut().for_each(|v| *v *= g);
                    a.iter_mut().for_each(|row| row[i] *= f);
                }
            }
        }
    }
}

fn hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k + 1][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- H A, H = I - 2 v v^T / |v|^2 acting on rows k+1..n
        for j in 0..n {
            let dot: f64 = v.iter().enumerate().map(|(t, vt)| vt * a[k + 1 + t][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for (t, vt) in v.iter().enumerate() {
                a[k + 1 + t][j] -= f * vt;
            }
        }
        // A <- A H on columns k+1..n
        for row in a.iter_mut() {
            let dot: f64 = v.iter().enumerate().map(|(t, vt)| vt * row[k + 1 + t]).sum();
            let f = 2.0 * dot / vnorm2;
            for (t, vt) in v.iter().enumerate() {
                row[k + 1 + t] -= f * vt;
            }
        }
        a[k + 1][k] = alpha;
        for row in a.iter_mut().skip(k + 2) {
            row[k] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

fn hqr(a: &mut [Vec<f64>]) -> Result<Vec<Complex64>> {
    let n = a.len() as isize;
    let eps = f64::EPSILON;
    let mut wr = vec![Complex64::new(0.0, 0.0); n as usize];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += a[i as usize][j as usize].abs();
        }
    }
    macro_rules! at {
        ($i:expr, $j:expr) => {
            a[($i) as usize][($j) as usize]
        };
    }
    let mut nn = n - 1;
    let mut t = 0.0;
    let mut total_its = 0usize;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l > 0 {
                let mut s = at!(l - 1, l - 1).abs() + at!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at!(l, l - 1).abs() <= eps * s {
                    at!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = at!(nn, nn);
            if l == nn {
                wr[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
            } else {
                let mut y = at!(nn - 1, nn - 1);
                let mut w = at!(nn, nn - 1) * at!(nn - 1, nn);
                if l == nn - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[(nn - 1) as usize] = Complex64::new(x + z, 0.0);
                        wr[nn as usize] = Complex64::new(x + z, 0.0);
                        if z != 0.0 {
                            wr[nn as usize] = Complex64::new(x - w / z, 0.0);
                        }
                    } else {
                        wr[nn as usize] = Complex64::new(x + p, -z);
                        wr[(nn - 1) as usize] = Complex64::new(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if its == MAX_ITS_PER_EIGENVALUE {
                        return Err(Error::NoConvergence(total_its));
                    }
                    if its > 0 && its % 10 == 0 {
                        t += x;
                        for i in 0..=nn {
                            at!(i, i) -= x;
                        }
                        let s = at!(nn, nn - 1).abs() + at!(nn - 1, nn - 2).abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    total_its += 1;
                    let (mut p, mut q, mut r);
                    let mut m = nn - 2;
                    loop {
                        let z = at!(m, m);
                        let rr = x - z;
                        let s = y - z;
                        p = (rr * s - w) / at!(m + 1, m) + at!(m, m + 1);
                        q = at!(m + 1, m + 1) - z - rr - s;
                        r = at!(m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = at!(m, m - 1).abs() * (q.abs() + r.abs());
                        let v = p.abs() * (at!(m - 1, m - 1).abs() + z.abs() + at!(m + 1, m + 1).abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m..nn - 1 {
                        at!(i + 2, i) = 0.0;
                        if i != m {
                            at!(i + 2, i - 1) = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = at!(k, k - 1);
                            q = at!(k + 1, k - 1);
                            r = 0.0;
                            if k + 1 != nn {
                                r = at!(k + 2, k - 1);
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    at!(k, k - 1) = -at!(k, k - 1);
                                }
                            } else {
                                at!(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            let z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                let mut pp = at!(k, j) + q * at!(k + 1, j);
                                if k + 1 != nn {
                                    pp += r * at!(k + 2, j);
                                    at!(k + 2, j) -= pp * z;
                                }
                                at!(k + 1, j) -= pp * y;
                                at!(k, j) -= pp * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                let mut pp = x * at!(i, k) + y * at!(i, k + 1);
                                if k + 1 != nn {
                                    pp += z * at!(i, k + 2);
                                    at!(i, k + 2) -= pp * r;
                                }
                                at!(i, k + 1) -= pp * q;
                                at!(i, k) -= pp;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if l + 1 >= nn {
                break;
            }
        }
    }
    Ok(wr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn oracle(a: &[f64], n: usize) -> Vec<Complex64> {
        let m = DMatrix::from_row_slice(n, n, a);
        let schur = nalgebra::linalg::Schur::try_new(m, 1e-15, 100_000).expect("oracle converges");
        sorted(schur.complex_eigenvalues().iter().copied().collect())
    }

    #[test]
    fn small_known_spectra() {
        let ev = sorted(eigenvalues(&[2.0, 0.0, 0.0, 3.0], 2).unwrap());
        assert_eq!(ev, vec![Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]);
        let rot = sorted(eigenvalues(&[0.0, -1.0, 1.0, 0.0], 2).unwrap());
        assert!((rot[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((rot[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(eigenvalues(&[5.0], 1).unwrap(), vec![Complex64::new(5.0, 0.0)]);
        assert!(eigenvalues(&[], 0).unwrap().is_empty());
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let a = [10.0, -35.0, 50.0, -24.0, 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0.];
        let ev = sorted(eigenvalues(&a, 4).unwrap());
        for (i, e) in ev.iter().enumerate() {
            assert!((e - Complex64::new(i as f64 + 1.0, 0.0)).norm() < 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn matches_nalgebra(n in 1usize..24, seed in proptest::collection::vec(-1.0f64..1.0, 576)) {
            let a = &seed[..n * n];
            let ours = sorted(eigenvalues(a, n).unwrap());
            let theirs = oracle(a, n);
            // compare as multisets via greedy matching
            let mut used = vec![false; n];
            for e in &ours {
                let (best, d) = theirs.iter().enumerate().filter(|(i, _)| !used[*i])
                    .map(|(i, t)| (i, (t - e).norm()))
                    .min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
                used[best] = true;
                prop_assert!(d < 1e-8, "eigenvalue {e} off by {d}");
            }
        }

        #[test]
        fn trace_and_determinism(n in 2usize..16, seed in proptest::collection::vec(-2.0f64..2.0, 256)) {
            let a = &seed[..n * n];
            let ev = eigenvalues(a, n).unwrap();
            let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
            let sum: Complex64 = ev.iter().sum();
            prop_assert!((sum.re - trace).abs() < 1e-9 && sum.im.abs() < 1e-9);
            prop_assert_eq!(ev, eigenvalues(a, n).unwrap());
        }
    }
}

//! Necessary conditions for 8x8 centro-symmetric filters with one vanishing
//! moment, stated on the 4x4 polyphase grids.

use crate::error::{Error, Result};
use crate::masks::{polyphase_assemble, polyphase_split, FilterMask, PolyphaseCoeffs};
use crate::verify::{check_orthogonality_equations, linear_moment_residuals, sum_residual};

pub const LEMMA_TOL: f64 = 1e-10;
/// Half-width of the band around 0 and 1/4 accepted by the dichotomy.
pub const CLASSIFY_GUARD: f64 = 1e-6;

pub fn polyphase8_split(mask: &FilterMask) -> Result<PolyphaseCoeffs> {
    if mask.rows() != 8 || mask.cols() != 8 {
        return Err(Error::WrongSize {
            expected: "8x8".into(),
            got: format!("{}x{}", mask.rows(), mask.cols()),
        });
    }
    polyphase_split(mask)
}

pub fn polyphase8_assemble(p: &PolyphaseCoeffs) -> Result<FilterMask> {
    if p.side != 4 {
        return Err(Error::WrongSize { expected: "side 4".into(), got: format!("side {}", p.side) });
    }
    Ok(polyphase_assemble(p))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Qmf8Report {
    /// 24 shift-class residuals, then `|sum nu^2 - 1/8|`.
    pub residuals: Vec<f64>,
    /// `|2 (sum a + sum b) - 1|`.
    pub sum_residual: f64,
}

fn require_side4(p: &PolyphaseCoeffs) -> Result<()> {
    if p.side == 4 {
        Ok(())
    } else {
        Err(Error::WrongSize { expected: "side 4".into(), got: format!("side {}", p.side) })
    }
}

pub fn check_qmf8(p: &PolyphaseCoeffs) -> Result<Qmf8Report> {
    require_side4(p)?;
    Ok(Qmf8Report { residuals: check_orthogonality_equations(p), sum_residual: sum_residual(p) })
}

/// Row sums of `a` and `b` agree; column `c` of `a` matches column `3 - c`
/// of `b`.
pub fn check_moment_equations8(p: &PolyphaseCoeffs) -> Result<Vec<f64>> {
    require_side4(p)?;
    Ok(linear_moment_residuals(p))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSums {
    /// Column sums of `a` on the 4x4 grid.
    pub cols: [f64; 4],
    /// Row sums of `a` on the 4x4 grid.
    pub rows: [f64; 4],
}

fn grid_sums(v: &[f64]) -> QuadSums {
    let mut sums = QuadSums { cols: [0.0; 4], rows: [0.0; 4] };
    for (i, x) in v.iter().enumerate() {
        sums.rows[i / 4] += x;
        sums.cols[i % 4] += x;
    }
    sums
}

pub fn quad_sums(p: &PolyphaseCoeffs) -> QuadSums {
    grid_sums(&p.a)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSums8 {
    pub r0: f64,
    pub s0: f64,
    pub t0: f64,
    pub u0: f64,
    pub r1: f64,
    pub s1: f64,
    pub t1: f64,
    pub u1: f64,
    pub alpha8: f64,
    pub beta8: f64,
}

impl MomentSums8 {
    /// Column and row sums implied by these values.
    pub fn quad_sums(&self) -> QuadSums {
        QuadSums {
            cols: [
                (self.r0 + self.r1) / 2.0,
                (self.s0 + self.s1) / 2.0,
                (self.r0 - self.r1) / 2.0,
                (self.s0 - self.s1) / 2.0,
            ],
            rows: [
                (self.t0 + self.t1) / 2.0,
                (self.u0 + self.u1) / 2.0,
                (self.t0 - self.t1) / 2.0,
                (self.u0 - self.u1) / 2.0,
            ],
        }
    }
}

fn classify(name: &str, v: f64) -> Result<f64> {
    if v.abs() <= CLASSIFY_GUARD {
        Ok(0.0)
    } else if (v - 0.25).abs() <= CLASSIFY_GUARD {
        Ok(0.25)
    } else {
        Err(Error::LemmaViolated(format!("{name} = {v} is neither 0 nor 1/4")))
    }
}

fn expect_zero(name: &str, v: f64) -> Result<()> {
    if v.abs() < LEMMA_TOL {
        Ok(())
    } else {
        Err(Error::LemmaViolated(format!("{name}: residual {v:e}")))
    }
}

/// One axis: `(x0, y0, x1, y1)` from the four quad sums, checked against
/// `x0 + y0 = 1/4`, `x0 y0 = 0`, `x1^2 + y1^2 = 1/16`, `(x0 + x1)(y0 - y1) = 0`.
fn solve_axis(q: [f64; 4], names: [&str; 2]) -> Result<(f64, f64, f64, f64)> {
    let x0 = q[0] + q[2];
    let x1 = q[0] - q[2];
    let y0 = q[1] + q[3];
    let y1 = q[1] - q[3];
    let [xn, yn] = names;
    expect_zero(&format!("{xn}0 + {yn}0 = 1/4"), x0 + y0 - 0.25)?;
    let cx = classify(&format!("{xn}0"), x0)?;
    let cy = classify(&format!("{yn}0"), y0)?;
    if cx * cy != 0.0 {
        return Err(Error::LemmaViolated(format!("{xn}0 {yn}0 = {} is not 0", x0 * y0)));
    }
    expect_zero(&format!("{xn}1^2 + {yn}1^2 = 1/16"), x1 * x1 + y1 * y1 - 0.0625)?;
    expect_zero(&format!("({xn}0 + {xn}1)({yn}0 - {yn}1) = 0"), (x0 + x1) * (y0 - y1))?;
    Ok((x0, y0, x1, y1))
}

pub fn solve_moment_sums(p: &PolyphaseCoeffs) -> Result<MomentSums8> {
    require_side4(p)?;
    let q = quad_sums(p);
    let (r0, s0, r1, s1) = solve_axis(q.cols, ["r", "s"])?;
    let (t0, u0, t1, u1) = solve_axis(q.rows, ["t", "u"])?;
    Ok(MomentSums8 {
        r0,
        s0,
        t0,
        u0,
        r1,
        s1,
        t1,
        u1,
        alpha8: (4.0 * s1).atan2(4.0 * r1),
        beta8: (4.0 * u1).atan2(4.0 * t1),
    })
}

/// `sum over a, b of (c0 + c2)^2 + (c1 + c3)^2 - 1/8` and the same with
/// minus signs, for column sums then row sums.
pub fn circle_relation_residuals(p: &PolyphaseCoeffs) -> [f64; 4] {
    let (a, b) = (grid_sums(&p.a), grid_sums(&p.b));
    let (ac, ar, bc, br) = (a.cols, a.rows, b.cols, b.rows);
    let circle = |x: [f64; 4], y: [f64; 4], sg: f64| {
        let f = |q: [f64; 4]| (q[0] + sg * q[2]).powi(2) + (q[1] + sg * q[3]).powi(2);
        (f(x) + f(y) - 0.125).abs()
    };
    [circle(ac, bc, 1.0), circle(ac, bc, -1.0), circle(ar, br, 1.0), circle(ar, br, -1.0)]
}

/// One admissible assignment of the eight quad-sum parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentCase {
    pub r0: f64,
    pub s0: f64,
    pub r1: f64,
    pub s1: f64,
    pub t0: f64,
    pub u0: f64,
    pub t1: f64,
    pub u1: f64,
}

/// The three `(x1, y1)` sign cases for a given `(x0, y0)`.
pub fn axis_sign_cases(x0: f64, y0: f64) -> [(f64, f64); 3] {
    [(x0, y0), (-x0, y0), (-x0, -y0)]
}

pub fn enumerate_moment_cases() -> Vec<MomentCase> {
    let base = [(0.25, 0.0), (0.0, 0.25)];
    let mut out = Vec::with_capacity(36);
    for &(r0, s0) in &base {
        for (r1, s1) in axis_sign_cases(r0, s0) {
            for &(t0, u0) in &base {
                for (t1, u1) in axis_sign_cases(t0, u0) {
                    out.push(MomentCase { r0, s0, r1, s1, t0, u0, t1, u1 });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masks::{case1_mask, case4a_masks, Case1Params};
    use crate::verify::max_of;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tensor() -> FilterMask {
        let mut m = FilterMask::zeros(8, 8);
        for j in 3..5 {
            for k in 3..5 {
                m.set(j, k, 0.25);
            }
        }
        m
    }

    fn embedded(beta: f64, gamma: f64) -> PolyphaseCoeffs {
        let m = case1_mask(Case1Params::new(beta, gamma)).unwrap();
        polyphase8_split(&m.embed(8, 8, (1, 1)).unwrap()).unwrap()
    }

    #[test]
    fn tensor_mask_values() {
        let p = polyphase8_split(&tensor()).unwrap();
        let nz: Vec<_> = p.a.iter().chain(&p.b).filter(|v| **v != 0.0).collect();
        assert_eq!(nz, vec![&0.25, &0.25]);
        assert_eq!((p.a[10], p.b[9]), (0.25, 0.25));
        assert_eq!(polyphase8_assemble(&p).unwrap(), tensor());
        let q = check_qmf8(&p).unwrap();
        assert_eq!(q.residuals.len(), 25);
        assert!(max_of(&q.residuals) < 1e-14 && q.sum_residual < 1e-14);
        assert!(check_moment_equations8(&p).unwrap().iter().all(|&v| v == 0.0));
        let m = solve_moment_sums(&p).unwrap();
        assert!(m.r0 == 0.0 || m.r0 == 0.25);
    }

    #[test]
    fn embedded_case1_passes() {
        for i in 0..10 {
            let p = embedded(0.6 * i as f64, 2.0 - 0.45 * i as f64);
            let q = check_qmf8(&p).unwrap();
            assert!(max_of(&q.residuals) < 1e-10 && q.sum_residual < 1e-10);
            assert!(max_of(&check_moment_equations8(&p).unwrap()) < 1e-12);
            let m = solve_moment_sums(&p).unwrap();
            assert!((m.r0 * m.s0).abs() < 1e-12 && (m.t0 * m.u0).abs() < 1e-12);
            assert!(circle_relation_residuals(&p).iter().all(|&r| r < 1e-10));
            let back = m.quad_sums();
            let orig = quad_sums(&p);
            for c in 0..4 {
                assert!((back.cols[c] - orig.cols[c]).abs() < 1e-12);
                assert!((back.rows[c] - orig.rows[c]).abs() < 1e-12);
            }
            assert!((m.r1 - m.alpha8.cos() / 4.0).abs() < 1e-12);
            assert!((m.u1 - m.beta8.sin() / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn embedded_case4a_passes() {
        for m in case4a_masks() {
            let p = polyphase8_split(&m.embed(8, 8, (1, 1)).unwrap()).unwrap();
            assert!(max_of(&check_qmf8(&p).unwrap().residuals) < 1e-10);
            assert!(solve_moment_sums(&p).is_ok());
        }
    }

    #[test]
    fn perturbation_touches_two_equations() {
        let mut p = embedded(1.0, 0.3);
        let before = check_moment_equations8(&p).unwrap();
        p.a[0] += 1e-3;
        let after = check_moment_equations8(&p).unwrap();
        let changed: Vec<usize> = (0..8).filter(|&i| (after[i] - before[i]).abs() > 5e-4).collect();
        assert_eq!(changed, vec![0, 4]);
    }

    #[test]
    fn random_masks_violate_lemma() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = (0..16).map(|_| rng.gen_range(-0.1..0.1)).collect();
            let b = (0..16).map(|_| rng.gen_range(-0.1..0.1)).collect();
            let p = PolyphaseCoeffs::new(4, a, b).unwrap();
            assert!(matches!(solve_moment_sums(&p), Err(Error::LemmaViolated(_))));
        }
    }

    #[test]
    fn wrong_sizes() {
        assert!(polyphase8_split(&FilterMask::zeros(6, 6)).is_err());
        assert!(check_qmf8(&PolyphaseCoeffs::zeros(3)).is_err());
    }

    #[test]
    fn case_enumeration() {
        let cases = enumerate_moment_cases();
        assert_eq!(cases.len(), 36);
        assert_eq!(axis_sign_cases(0.25, 0.0).len(), 3);
        for c in &cases {
            assert!((c.r0 + c.s0 - 0.25).abs() == 0.0 && c.r0 * c.s0 == 0.0);
            assert_eq!(c.r1 * c.r1 + c.s1 * c.s1, 0.0625);
            assert_eq!((c.r0 + c.r1) * (c.s0 - c.s1), 0.0);
            assert_eq!((c.t0 + c.t1) * (c.u0 - c.u1), 0.0);
        }
    }
}

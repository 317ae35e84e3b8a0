use std::f64::consts::{FRAC_PI_4, PI};

use crate::angle::{cos_sin, cos_sin_over_sqrt2, eighth_turn, normalize};
use crate::error::{Error, Result};
use crate::masks::{polyphase_assemble, FilterMask, PolyphaseCoeffs};
use crate::verify::{check_orthogonality_equations, linear_moment_residuals, max_of, sum_residual};

/// Every constructor rejects its own output above this residual.
pub const CONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Case1Params {
    pub beta: f64,
    pub gamma: f64,
}

impl Case1Params {
    pub fn new(beta: f64, gamma: f64) -> Self {
        Case1Params { beta, gamma }
    }

    pub fn alpha(&self) -> f64 {
        normalize(2.0 * (self.beta - self.gamma) + FRAC_PI_4)
    }

    pub fn p(&self) -> f64 {
        0.0625 - cos_sin_over_sqrt2(self.alpha()).0 / 8.0
    }

    pub fn q(&self) -> f64 {
        0.0625 - cos_sin_over_sqrt2(self.alpha()).1 / 8.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Case2aPart {
    /// One-parameter family in `gamma`.
    P1 { gamma: f64 },
    /// One-parameter family in `alpha`; `gamma` follows from the sign branch.
    P2 { alpha: f64 },
    /// The two isolated solutions at `alpha = pi/4`.
    P3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Case2aParams {
    pub part: Case2aPart,
    pub sign: Sign,
}

impl Case2aParams {
    /// Branch angle `gamma(alpha)` of part 2.
    pub fn p2_gamma(alpha: f64, sign: Sign) -> Result<f64> {
        let a = normalize(alpha);
        if matches!(eighth_turn(a), Some(1) | Some(5)) {
            return Err(Error::InvalidBranch(format!(
                "alpha = {a} gives p = q; part 2 needs alpha other than pi/4 and 5pi/4"
            )));
        }
        let g = match (a < FRAC_PI_4, sign) {
            (true, Sign::Plus) => -a / 2.0 + 7.0 * PI / 8.0,
            (true, Sign::Minus) => a / 2.0 - 3.0 * PI / 8.0,
            (false, Sign::Plus) => a / 2.0 + 5.0 * PI / 8.0,
            (false, Sign::Minus) => -a / 2.0 - PI / 8.0,
        };
        Ok(g)
    }

    /// `(p, q, s, t)` of part 2.
    pub fn p2_pqst(alpha: f64) -> (f64, f64, f64, f64) {
        let (c, s) = cos_sin_over_sqrt2(alpha);
        let p = -0.0625 - c / 8.0;
        let q = -0.0625 - s / 8.0;
        let big_s = (32.0 * (p * p + q * q)).sqrt();
        let t = ((p + 0.125).powi(2) + (q + 0.125).powi(2)).sqrt();
        (p, q, big_s, t)
    }
}

fn self_verify(p: PolyphaseCoeffs) -> Result<PolyphaseCoeffs> {
    let residual = sum_residual(&p)
        .max(max_of(&check_orthogonality_equations(&p)))
        .max(max_of(&linear_moment_residuals(&p)));
    if residual.is_finite() && residual <= CONSTRUCTION_TOL {
        Ok(p)
    } else {
        Err(Error::ConstructionInconsistent { residual, tol: CONSTRUCTION_TOL })
    }
}

pub fn case1_polyphase(params: Case1Params) -> Result<PolyphaseCoeffs> {
    if !params.beta.is_finite() || !params.gamma.is_finite() {
        return Err(Error::ParameterOutOfDomain("beta and gamma must be finite".into()));
    }
    let (p, q) = (params.p(), params.q());
    let r = p.hypot(q);
    let (cd, sd) = cos_sin(params.beta - params.gamma);
    let (cb, sb) = cos_sin(params.beta);
    let (cg, sg) = cos_sin(params.gamma);
    let mut a = [0.0; 9];
    let mut b = [0.0; 9];
    a[0] = (-p * (1.0 + cd) - q * sd - r * (cb + cg)) / 4.0;
    a[2] = (-p * (1.0 - cd) + q * sd - r * (cb - cg)) / 4.0;
    a[6] = (-p * (1.0 - cd) + q * sd + r * (cb - cg)) / 4.0;
    b[0] = (-q * (1.0 + cd) + p * sd - r * (sb + sg)) / 4.0;
    b[2] = (-q * (1.0 - cd) - p * sd - r * (sb - sg)) / 4.0;
    b[6] = (-q * (1.0 - cd) - p * sd + r * (sb - sg)) / 4.0;
    b[8] = (-q * (1.0 + cd) + p * sd + r * (sb + sg)) / 4.0;
    a[1] = p / 2.0 + r * cb / 2.0;
    b[1] = q / 2.0 + r * sb / 2.0;
    a[3] = p / 2.0 + r * cg / 2.0;
    b[3] = q / 2.0 + r * sg / 2.0;
    a[5] = p / 2.0 - r * cg / 2.0;
    a[7] = p / 2.0 - r * cb / 2.0;
    b[7] = q / 2.0 - r * sb / 2.0;
    a[4] = 0.25 - p;
    b[4] = 0.25 - q;
    a[8] = -a[6] - a[7];
    b[5] = -b[2] - b[8];
    self_verify(PolyphaseCoeffs::new(3, a.to_vec(), b.to_vec())?)
}

pub fn case1_mask(params: Case1Params) -> Result<FilterMask> {
    Ok(polyphase_assemble(&case1_polyphase(params)?))
}

pub fn case2a_polyphase(params: Case2aParams) -> Result<PolyphaseCoeffs> {
    let mut a = [0.0; 9];
    let mut b = [0.0; 9];
    match params.part {
        Case2aPart::P1 { gamma } => {
            if !gamma.is_finite() {
                return Err(Error::ParameterOutOfDomain("gamma must be finite".into()));
            }
            let (c, s) = cos_sin_over_sqrt2(gamma);
            let (rc, rs) = (2.0 * c, 2.0 * s);
            // 2 + 2 sin(gamma + pi/4) >= 0; clamp rounding below zero.
            let r = params.sign.value() * (2.0 + rc + rs).max(0.0).sqrt();
            a[1] = 0.1875 - c / 8.0;
            a[7] = 0.0625 + c / 8.0;
            b[1] = 0.1875 - s / 8.0;
            b[7] = 0.0625 + s / 8.0;
            a[0] = (1.0 + rc + r) / 32.0;
            a[2] = (1.0 + rc - r) / 32.0;
            a[6] = (-1.0 - rc - r) / 32.0;
            a[8] = (-1.0 - rc + r) / 32.0;
            b[0] = (1.0 + rs - r) / 32.0;
            b[2] = (1.0 + rs + r) / 32.0;
            b[6] = (-1.0 - rs + r) / 32.0;
            b[8] = (-1.0 - rs - r) / 32.0;
        }
        Case2aPart::P2 { alpha } => {
            if !alpha.is_finite() {
                return Err(Error::ParameterOutOfDomain("alpha must be finite".into()));
            }
            let gamma = Case2aParams::p2_gamma(alpha, params.sign)?;
            let (p, q, s, t) = Case2aParams::p2_pqst(alpha);
            let k = t / (p - q);
            let (cg, sg) = cos_sin(gamma);
            let (p8, q8) = (8.0 * p, 8.0 * q);
            a[0] = -(-1.0 + p8 + s + k * ((-s - p8 + q8) * cg + s * sg)) / 32.0;
            a[2] = (1.0 - p8 + s + k * ((-s + p8 - q8) * cg + s * sg)) / 32.0;
            a[6] = -(1.0 + p8 + s + k * ((s + p8 - q8) * cg - s * sg)) / 32.0;
            a[8] = (-1.0 - p8 + s + k * ((s - p8 + q8) * cg - s * sg)) / 32.0;
            b[0] = (1.0 - q8 + s + k * ((s + p8 - q8) * sg - s * cg)) / 32.0;
            b[2] = -(-1.0 + q8 + s + k * ((s - p8 + q8) * sg - s * cg)) / 32.0;
            b[6] = (-1.0 - q8 + s + k * ((-s - p8 + q8) * sg + s * cg)) / 32.0;
            b[8] = -(1.0 + q8 + s + k * ((-s + p8 - q8) * sg + s * cg)) / 32.0;
            a[1] = (3.0 + p8 - 8.0 * t * cg) / 16.0;
            b[1] = (3.0 + q8 - 8.0 * t * sg) / 16.0;
            a[7] = (1.0 + p8 + 8.0 * t * cg) / 16.0;
            b[7] = (1.0 + q8 + 8.0 * t * sg) / 16.0;
            a[3] = (p8 + s) / 16.0;
            b[3] = (q8 - s) / 16.0;
            a[5] = (p8 - s) / 16.0;
            b[5] = (q8 + s) / 16.0;
            a[4] = -p;
            b[4] = -q;
        }
        Case2aPart::P3 => {
            a[1] = 0.125;
            b[1] = 0.125;
            a[4] = 0.125;
            b[4] = 0.125;
            a[5] = -0.125;
            b[3] = -0.125;
            (a[8], b[8]) = match params.sign {
                Sign::Plus => (0.0, 0.0),
                Sign::Minus => (0.0625, -0.0625),
            };
            a[0] = 0.25 - a[1] + a[5] + a[8];
            a[2] = -a[5] - a[8];
            a[6] = -a[7] - a[8];
            b[0] = 0.25 - b[1] + b[5] + b[8];
            b[2] = -b[5] - b[8];
            b[6] = -b[7] - b[8];
        }
    }
    self_verify(PolyphaseCoeffs::new(3, a.to_vec(), b.to_vec())?)
}

pub fn case2a_mask(params: Case2aParams) -> Result<FilterMask> {
    Ok(polyphase_assemble(&case2a_polyphase(params)?))
}

/// All verified solutions of the doubly-periodic case for the given angles.
///
/// The angles fix the linear part; the remaining pair `(a8, b8)` solves a
/// quadratic. Roots are returned in descending `a8` order.
pub fn case4a_polyphase(alpha: f64, beta: f64, gamma: f64) -> Vec<PolyphaseCoeffs> {
    let (ca, sa) = cos_sin_over_sqrt2(alpha);
    let a4 = -0.0625 + ca / 8.0;
    let b4 = -0.0625 + sa / 8.0;
    let (p, q) = (-a4, -b4);
    // sqrt(1 + sin(alpha + pi/4)) * cos(beta) = sqrt(2 (1 + ...)) * cos(beta)/sqrt(2)
    let lift = (2.0 * (1.0 + cos_sin(alpha + FRAC_PI_4).1)).max(0.0).sqrt();
    let (cb, sb) = cos_sin_over_sqrt2(beta);
    let (cg, sg) = cos_sin_over_sqrt2(gamma);
    let a7 = p / 2.0 - 0.0625 + lift * cb / 16.0;
    let b7 = q / 2.0 - 0.0625 + lift * sb / 16.0;
    let a5 = p / 2.0 - 0.0625 + lift * cg / 16.0;
    let b3 = q / 2.0 - 0.0625 + lift * sg / 16.0;
    let a1 = -a4 - a7;
    let b1 = -b4 - b7;
    let a3 = -a4 - a5;
    let b5 = -b4 - b3;
    let sigma = -(a7 + b7) / 2.0;
    let big_p = 0.25 - a1 + a5;
    let big_q = -b1 + b5;
    let qb = big_p - 2.0 * sigma - big_q;
    let qc = sigma * sigma + big_q * sigma;
    let disc = qb * qb - 8.0 * qc;
    if disc < -1e-12 {
        return Vec::new();
    }
    let root = disc.max(0.0).sqrt();
    let mut roots = vec![(-qb + root) / 4.0];
    if root > 1e-12 {
        roots.push((-qb - root) / 4.0);
    }
    roots
        .into_iter()
        .filter_map(|a8| {
            let b8 = sigma - a8;
            let a6 = -a7 - a8;
            let a2 = -a5 - a8;
            let a0 = 0.25 - a1 - a2;
            let b6 = -b7 - b8;
            let b2 = 0.25 - b5 - b8;
            let b0 = 0.25 - b1 - b2;
            let a = vec![a0, a1, a2, a3, a4, a5, a6, a7, a8];
            let b = vec![b0, b1, b2, b3, b4, b5, b6, b7, b8];
            self_verify(PolyphaseCoeffs { side: 3, a, b }).ok()
        })
        .collect()
}

/// The six isolated solutions: four rational ones, then the two at
/// `alpha = pi/4 + acos(17 - 8 sqrt 5)` and `alpha = pi/4 - acos(17 - 8 sqrt 5)`.
pub fn case4a_masks() -> Vec<FilterMask> {
    let q3 = -3.0 * FRAC_PI_4;
    let irr = (17.0 - 8.0 * 5f64.sqrt()).acos();
    let angles = [
        (q3, 0.0, 0.0),
        (FRAC_PI_4, q3, FRAC_PI_4),
        (FRAC_PI_4, FRAC_PI_4, q3),
        (FRAC_PI_4 + irr, q3, q3),
        (FRAC_PI_4 - irr, q3, q3),
    ];
    angles
        .iter()
        .flat_map(|&(a, b, g)| case4a_polyphase(a, b, g))
        .map(|p| polyphase_assemble(&p))
        .collect()
}

pub fn haar_mask() -> FilterMask {
    FilterMask::new(2, 2, vec![0.25; 4]).expect("2x2")
}

/// Length-4 Daubechies lowpass normalized to unit sum.
pub fn d4_taps() -> [f64; 4] {
    let r3 = 3f64.sqrt();
    [(1.0 + r3) / 8.0, (3.0 + r3) / 8.0, (3.0 - r3) / 8.0, (1.0 - r3) / 8.0]
}

/// Outer product of the D4 lowpass with itself (4x4).
pub fn d4_tensor_mask() -> FilterMask {
    let d = d4_taps();
    let coeffs = d.iter().flat_map(|x| d.iter().map(move |y| x * y)).collect();
    FilterMask::new(4, 4, coeffs).expect("4x4")
}

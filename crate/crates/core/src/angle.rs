//! Angle reduction and trigonometry that is exact at multiples of pi/4.
//!
//! Closed-form filter entries are dyadic at these angles; plain `cos`/`sin`
//! would leave rounding noise of order 1e-17 in entries that must be zero.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, TAU};

const SNAP_TOL: f64 = 1e-12;

/// Reduces `theta` to `[0, 2pi)`.
pub fn normalize(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Returns `k` in `0..8` if `theta` is within 1e-12 of `k*pi/4` (mod 2pi).
pub fn eighth_turn(theta: f64) -> Option<usize> {
    let r = normalize(theta);
    let k = (r / FRAC_PI_4).round();
    if (r - k * FRAC_PI_4).abs() < SNAP_TOL {
        Some((k as usize) % 8)
    } else {
        None
    }
}

/// `(cos theta, sin theta)`, exact at multiples of pi/4.
pub fn cos_sin(theta: f64) -> (f64, f64) {
    const H: f64 = FRAC_1_SQRT_2;
    const TABLE: [(f64, f64); 8] = [
        (1.0, 0.0),
        (H, H),
        (0.0, 1.0),
        (-H, H),
        (-1.0, 0.0),
        (-H, -H),
        (0.0, -1.0),
        (H, -H),
    ];
    match eighth_turn(theta) {
        Some(k) => TABLE[k],
        None => {
            let r = normalize(theta);
            (r.cos(), r.sin())
        }
    }
}

/// `(cos theta / sqrt 2, sin theta / sqrt 2)`, exact at multiples of pi/4.
pub fn cos_sin_over_sqrt2(theta: f64) -> (f64, f64) {
    const H: f64 = FRAC_1_SQRT_2;
    const TABLE: [(f64, f64); 8] = [
        (H, 0.0),
        (0.5, 0.5),
        (0.0, H),
        (-0.5, 0.5),
        (-H, 0.0),
        (-0.5, -0.5),
        (0.0, -H),
        (0.5, -0.5),
    ];
    match eighth_turn(theta) {
        Some(k) => TABLE[k],
        None => {
            let r = normalize(theta);
            (r.cos() * H, r.sin() * H)
        }
    }
}

/// Parses radians, accepting plain numbers and pi multiples such as `pi/4`,
/// `-3pi/4`, `3*pi/2`, `2pi` or `0.5*pi`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return lower.parse::<f64>().ok().filter(|v| v.is_finite());
    };
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().ok()?,
    };
    let den = if tail.is_empty() {
        1.0
    } else {
        tail.strip_prefix('/')?.parse::<f64>().ok()?
    };
    if den == 0.0 {
        return None;
    }
    let v = coef * PI / den;
    v.is_finite().then_some(v)
}

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::masks::FilterMask;

pub const CYCLE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `|m(e^{i xi}, 1)| = 1`
    X,
    /// `|m(1, e^{i xi})| = 1`
    Y,
}

/// Orbit `xi_j = 2 pi k_j / denominator` of the doubling map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub axis: Axis,
    pub denominator: u64,
    /// Orbit order starting from the smallest numerator.
    pub numerators: Vec<u64>,
}

impl Cycle {
    pub fn angles(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&k| TAU * k as f64 / self.denominator as f64)
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nontrivial cycles of `xi -> 2 xi mod 2 pi` with odd denominator up to
/// `max_denominator` on which the mask restricted to an axis has modulus 1.
pub fn axis_cycle_check(mask: &FilterMask, max_denominator: u64) -> Vec<Cycle> {
    let mut orbits: Vec<(u64, Vec<u64>)> = Vec::new();
    for d in (3..=max_denominator).step_by(2) {
        let mut seen = vec![false; d as usize];
        for k in 1..d {
            if seen[k as usize] || gcd(k, d) != 1 {
                continue;
            }
            let mut orbit = vec![k];
            seen[k as usize] = true;
            let mut x = (2 * k) % d;
            while x != k {
                seen[x as usize] = true;
                orbit.push(x);
                x = (2 * x) % d;
            }
            orbits.push((d, orbit));
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for axis in [Axis::X, Axis::Y] {
        for (d, orbit) in &orbits {
            let on_cycle = orbit.iter().all(|&k| {
                let z = Complex64::from_polar(1.0, TAU * k as f64 / *d as f64);
                let v = match axis {
                    Axis::X => mask.eval(z, one),
                    Axis::Y => mask.eval(one, z),
                };
                (v.norm() - 1.0).abs() < CYCLE_TOL
            });
            if on_cycle {
                out.push(Cycle { axis, denominator: *d, numerators: orbit.clone() });
            }
        }
    }
    out
}

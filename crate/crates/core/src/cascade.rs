//! Cascade iteration `phi <- 4 sum_k h_k phi(2 . - k)` on dyadic grids, and
//! midpoint-rule estimates of the shift inner products of the limit.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lawton::{index_shift, DIM};
use crate::masks::FilterMask;

pub const MAX_LEVELS: usize = 12;

/// Level-0 starting function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CascadeSeed {
    /// Indicator of `[0,1)^2`. Fixed by the Haar mask; for any mask whose
    /// shifts are orthonormal its shift correlations stay exactly `delta`.
    #[default]
    UnitSquare,
    /// `1/4` on `[0,2)^2`. Its correlations start away from `delta`, so the
    /// iterates show whether the refinement drives them back.
    Box2,
}

impl CascadeSeed {
    fn extent(self) -> usize {
        match self {
            CascadeSeed::UnitSquare => 1,
            CascadeSeed::Box2 => 2,
        }
    }
}

/// Piecewise-constant samples on cells of side `2^-level` covering
/// `[0, width 2^-level) x [0, height 2^-level)`; row index follows x.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingGrid {
    pub level: usize,
    pub width: usize,
    pub height: usize,
    pub samples: Vec<f64>,
    /// `deltas[i]`: relative L2 change from level `i` to level `i + 1`.
    pub deltas: Vec<f64>,
}

impl ScalingGrid {
    pub fn cells_per_unit(&self) -> usize {
        1 << self.level
    }

    pub fn step(&self) -> f64 {
        1.0 / self.cells_per_unit() as f64
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.samples[i * self.height + j]
    }

    /// Midpoint Riemann sum of the samples.
    pub fn integral(&self) -> f64 {
        self.samples.iter().sum::<f64>() * self.step() * self.step()
    }
}

pub fn cascade_iterate(mask: &FilterMask, levels: usize) -> Result<ScalingGrid> {
    cascade_iterate_with(mask, levels, CascadeSeed::UnitSquare, Execution::default())
}

pub fn cascade_iterate_with(
    mask: &FilterMask,
    levels: usize,
    seed: CascadeSeed,
    exec: Execution,
) -> Result<ScalingGrid> {
    if !(1..=MAX_LEVELS).contains(&levels) {
        return Err(Error::LevelsOutOfRange(levels));
    }
    let e = seed.extent();
    let ex = (mask.rows() - 1).max(e);
    let ey = (mask.cols() - 1).max(e);
    let seed_value = 1.0 / (e * e) as f64;
    let mut samples = vec![0.0; ex * ey];
    for i in 0..e {
        for j in 0..e {
            samples[i * ey + j] = seed_value;
        }
    }
    let mut grid = ScalingGrid { level: 0, width: ex, height: ey, samples, deltas: Vec::new() };
    for _ in 0..levels {
        grid = refine(&grid, mask, exec);
    }
    Ok(grid)
}

/// One cascade step; doubles the resolution and records the change.
pub fn refine(old: &ScalingGrid, mask: &FilterMask, exec: Execution) -> ScalingGrid {
    let stride = old.cells_per_unit();
    let (w, h) = (2 * old.width, 2 * old.height);
    let mut samples = vec![0.0; w * h];
    exec.for_each_row(&mut samples, h, |i, row| {
        for k1 in 0..mask.rows() {
            let Some(src) = i.checked_sub(k1 * stride) else { break };
            if src >= old.width {
                continue;
            }
            let src_row = &old.samples[src * old.height..(src + 1) * old.height];
            for k2 in 0..mask.cols() {
                let c = 4.0 * mask.get(k1, k2);
                if c == 0.0 {
                    continue;
                }
                let off = k2 * stride;
                if off >= h {
                    break;
                }
                let n = (h - off).min(old.height);
                for (dst, s) in row[off..off + n].iter_mut().zip(&src_row[..n]) {
                    *dst += c * s;
                }
            }
        }
    });
    let mut diff = 0.0;
    let mut norm = 0.0;
    for i in 0..w {
        for j in 0..h {
            let v = samples[i * h + j];
            let prev = old.samples[(i / 2) * old.height + j / 2];
            diff += (v - prev) * (v - prev);
            norm += v * v;
        }
    }
    let mut deltas = old.deltas.clone();
    deltas.push(if norm > 0.0 { (diff / norm).sqrt() } else { 0.0 });
    ScalingGrid { level: old.level + 1, width: w, height: h, samples, deltas }
}

/// Shift inner products on `[-4, 4]^2`, stored in transfer-matrix order.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationVector {
    pub values: Vec<f64>,
}

impl CorrelationVector {
    pub fn get(&self, l1: i32, l2: i32) -> f64 {
        self.values[crate::lawton::shift_index(l1, l2)]
    }

    /// `max |alpha - delta|`.
    pub fn delta_distance(&self) -> f64 {
        self.values
            .iter()
            .zip(crate::lawton::delta())
            .map(|(a, d)| (a - d).abs())
            .fold(0.0, f64::max)
    }
}

pub fn autocorrelation(grid: &ScalingGrid) -> CorrelationVector {
    autocorrelation_with(grid, Execution::default())
}

pub fn autocorrelation_with(grid: &ScalingGrid, exec: Execution) -> CorrelationVector {
    let s = grid.cells_per_unit() as i64;
    let (w, h) = (grid.width as i64, grid.height as i64);
    let area = grid.step() * grid.step();
    let values = exec.map_range(DIM, |idx| {
        let (l1, l2) = index_shift(idx);
        let (d1, d2) = (l1 as i64 * s, l2 as i64 * s);
        let mut acc = 0.0;
        for i in 0.max(d1)..w.min(w + d1) {
            let a = &grid.samples[(i * h) as usize..((i + 1) * h) as usize];
            let b = &grid.samples[((i - d1) * h) as usize..((i - d1 + 1) * h) as usize];
            let j0 = 0.max(d2);
            let j1 = h.min(h + d2);
            if j0 >= j1 {
                continue;
            }
            acc += a[j0 as usize..j1 as usize]
                .iter()
                .zip(&b[(j0 - d2) as usize..(j1 - d2) as usize])
                .map(|(x, y)| x * y)
                .sum::<f64>();
        }
        acc * area
    });
    CorrelationVector { values }
}

//! Nonseparable periodic filter bank with dilation `2I`.
//!
//! Analysis correlates the image with each of the four bank filters scaled by
//! 2 and keeps even samples; synthesis is its adjoint. For a bank whose
//! modulation matrix is unitary this pair is an orthogonal transform.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::masks::{FilterMask, WaveletBank};

#[derive(Clone, Debug, PartialEq)]
pub struct ImagePlane {
    pub width: usize,
    pub height: usize,
    /// Row-major, `height` rows of `width` pixels.
    pub pixels: Vec<f64>,
}

impl ImagePlane {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} pixels for {width}x{height}",
                pixels.len()
            )));
        }
        Ok(ImagePlane { width, height, pixels })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        ImagePlane { width, height, pixels: vec![0.0; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                pixels.push(f(r, c));
            }
        }
        ImagePlane { width, height, pixels }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.pixels[r * self.width + c]
    }

    pub fn energy(&self) -> f64 {
        self.pixels.iter().map(|v| v * v).sum()
    }

    /// Circular shift by `(dr, dc)`.
    pub fn shifted(&self, dr: usize, dc: usize) -> Self {
        ImagePlane::from_fn(self.width, self.height, |r, c| {
            self.get(
                (r + self.height - dr % self.height) % self.height,
                (c + self.width - dc % self.width) % self.width,
            )
        })
    }

    pub fn max_abs_diff(&self, other: &ImagePlane) -> f64 {
        self.pixels
            .iter()
            .zip(&other.pixels)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `|self - other| / |self|` in the L2 norm.
    pub fn relative_error(&self, other: &ImagePlane) -> f64 {
        let diff: f64 = self
            .pixels
            .iter()
            .zip(&other.pixels)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let norm = self.energy();
        if norm == 0.0 {
            diff.sqrt()
        } else {
            (diff / norm).sqrt()
        }
    }
}

/// Approximation band followed by the three detail bands.
#[derive(Clone, Debug, PartialEq)]
pub struct SubbandSet {
    pub bands: [ImagePlane; 4],
}

impl SubbandSet {
    pub fn approx(&self) -> &ImagePlane {
        &self.bands[0]
    }

    pub fn details(&self) -> &[ImagePlane] {
        &self.bands[1..]
    }

    pub fn energy(&self) -> f64 {
        self.bands.iter().map(ImagePlane::energy).sum()
    }
}

fn check_even(image: &ImagePlane) -> Result<()> {
    if image.width < 2 || image.height < 2 || image.width % 2 != 0 || image.height % 2 != 0 {
        return Err(Error::OddDimensions { width: image.width, height: image.height });
    }
    Ok(())
}

pub fn analyze(image: &ImagePlane, bank: &WaveletBank) -> Result<SubbandSet> {
    analyze_with(image, bank, Execution::default())
}

pub fn analyze_with(image: &ImagePlane, bank: &WaveletBank, exec: Execution) -> Result<SubbandSet> {
    check_even(image)?;
    let [f0, f1, f2, f3] = bank.filters();
    Ok(SubbandSet {
        bands: [
            analyze_one(image, f0, exec),
            analyze_one(image, f1, exec),
            analyze_one(image, f2, exec),
            analyze_one(image, f3, exec),
        ],
    })
}

fn analyze_one(image: &ImagePlane, f: &FilterMask, exec: Execution) -> ImagePlane {
    let (h, w) = (image.height, image.width);
    let (oh, ow) = (h / 2, w / 2);
    let mut out = ImagePlane::zeros(ow, oh);
    exec.for_each_row(&mut out.pixels, ow, |n1, row| {
        for j in 0..f.rows() {
            let src = &image.pixels[((2 * n1 + j) % h) * w..][..w];
            for k in 0..f.cols() {
                let c = 2.0 * f.get(j, k);
                if c == 0.0 {
                    continue;
                }
                for (n2, dst) in row.iter_mut().enumerate() {
                    *dst += c * src[(2 * n2 + k) % w];
                }
            }
        }
    });
    out
}

pub fn synthesize(subbands: &SubbandSet, bank: &WaveletBank) -> Result<ImagePlane> {
    synthesize_with(subbands, bank, Execution::default())
}

pub fn synthesize_with(
    subbands: &SubbandSet,
    bank: &WaveletBank,
    exec: Execution,
) -> Result<ImagePlane> {
    let (bw, bh) = (subbands.bands[0].width, subbands.bands[0].height);
    if subbands.bands.iter().any(|b| b.width != bw || b.height != bh) || bw == 0 || bh == 0 {
        return Err(Error::DimensionMismatch("subbands must share one size".into()));
    }
    let (h, w) = (2 * bh, 2 * bw);
    let mut out = ImagePlane::zeros(w, h);
    let filters = bank.filters();
    exec.for_each_row(&mut out.pixels, w, |m1, row| {
        for (f, band) in filters.iter().zip(&subbands.bands) {
            for j in 0..f.rows() {
                // rows n1 with (2 n1 + j) = m1 mod h
                let t = (m1 + h * (j / h + 1) - j) % h;
                if t % 2 != 0 {
                    continue;
                }
                let src = &band.pixels[(t / 2) * bw..][..bw];
                for k in 0..f.cols() {
                    let c = 2.0 * f.get(j, k);
                    if c == 0.0 {
                        continue;
                    }
                    let kk = k % w;
                    for (m2, dst) in row.iter_mut().enumerate() {
                        let u = (m2 + w - kk) % w;
                        if u % 2 == 0 {
                            *dst += c * src[u / 2];
                        }
                    }
                }
            }
        }
    });
    Ok(out)
}

/// Detail bands per level (finest first) and the final approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiLevel {
    pub details: Vec<[ImagePlane; 3]>,
    pub approx: ImagePlane,
}

pub fn analyze_multilevel(image: &ImagePlane, bank: &WaveletBank, levels: usize) -> Result<MultiLevel> {
    let mut approx = image.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let s = analyze(&approx, bank)?;
        let [a, d1, d2, d3] = s.bands;
        details.push([d1, d2, d3]);
        approx = a;
    }
    Ok(MultiLevel { details, approx })
}

pub fn synthesize_multilevel(ml: &MultiLevel, bank: &WaveletBank) -> Result<ImagePlane> {
    let mut approx = ml.approx.clone();
    for [d1, d2, d3] in ml.details.iter().rev() {
        let s = SubbandSet { bands: [approx, d1.clone(), d2.clone(), d3.clone()] };
        approx = synthesize(&s, bank)?;
    }
    Ok(approx)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub total: f64,
    /// Fraction of the energy in each band, approximation first.
    pub fractions: [f64; 4],
    /// Fewest coefficients that together hold 99% of the energy.
    pub coeffs_for_99: usize,
}

pub fn energy_compaction(subbands: &SubbandSet) -> EnergyReport {
    let energies = subbands.bands.each_ref().map(ImagePlane::energy);
    let total: f64 = energies.iter().sum();
    let fractions = energies.map(|e| if total > 0.0 { e / total } else { 0.0 });
    let mut sq: Vec<f64> = subbands
        .bands
        .iter()
        .flat_map(|b| b.pixels.iter().map(|v| v * v))
        .collect();
    sq.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut coeffs_for_99 = 0;
    if total > 0.0 {
        for v in sq {
            acc += v;
            coeffs_for_99 += 1;
            if acc >= 0.99 * total {
                break;
            }
        }
    }
    EnergyReport { total, fractions, coeffs_for_99 }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    pub energy: EnergyReport,
    /// Relative L2 reconstruction error.
    pub pr_residual: f64,
}

pub fn compare_filters(image: &ImagePlane, banks: &[(String, WaveletBank)]) -> Result<Vec<ComparisonRow>> {
    banks
        .iter()
        .map(|(name, bank)| {
            let s = analyze(image, bank)?;
            let back = synthesize(&s, bank)?;
            Ok(ComparisonRow {
                name: name.clone(),
                energy: energy_compaction(&s),
                pr_residual: image.relative_error(&back),
            })
        })
        .collect()
}

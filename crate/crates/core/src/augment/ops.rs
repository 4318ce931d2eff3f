//! The eight depth-sensor operators. Each takes and returns a whole image.
//!
//! Hole discipline: only [`stereo_fuse`] and [`pixel_failures`] may turn a
//! valid pixel into a hole, and nothing turns a hole back into a measurement.
//! Noise stages that would push a depth to zero or below clamp it to
//! [`MIN_VALID_DEPTH`] instead.

use crate::error::{Error, Result};
use crate::image::{DepthImage, INVALID};
use crate::perlin::PerlinField;
use crate::rng::Draws;

use super::params::{quadratic_sigma, Crop};

/// Disparity regularizer in `u_r = u - f_x b / (d + eps)`.
pub const DISPARITY_EPS: f64 = 1e-6;
/// Smallest depth a valid pixel can hold after a noise stage.
pub const MIN_VALID_DEPTH: f32 = 1e-4;

#[inline]
fn keep_valid(d: f64) -> f32 {
    let v = d as f32;
    if v > MIN_VALID_DEPTH {
        v
    } else {
        MIN_VALID_DEPTH
    }
}

/// Right-image depth at fractional column `u_r` on `row`, linearly
/// interpolated. `None` outside the image or when a contributing neighbor is
/// a hole.
#[inline]
fn sample_row(right: &DepthImage, row: usize, u_r: f64) -> Option<f64> {
    let last = (right.width() - 1) as f64;
    if !(u_r >= 0.0 && u_r <= last) {
        return None;
    }
    let u0 = u_r.floor();
    let frac = u_r - u0;
    let c0 = u0 as usize;
    let d0 = right.get(row, c0);
    if d0 == INVALID {
        return None;
    }
    if frac == 0.0 {
        return Some(d0 as f64);
    }
    let d1 = right.get(row, c0 + 1);
    if d1 == INVALID {
        return None;
    }
    Some(d0 as f64 + (d1 as f64 - d0 as f64) * frac)
}

/// Disparity consistency check. A left pixel survives when the right view,
/// sampled at `u_r = u - f_x b / (d_left + eps)`, agrees to within
/// `tau * d_left`; otherwise it becomes a hole.
pub fn stereo_fuse(
    left: &DepthImage,
    right: &DepthImage,
    fx: f64,
    baseline: f64,
    tau: f64,
) -> Result<DepthImage> {
    if left.shape() != right.shape() {
        return Err(Error::DimensionMismatch {
            left: left.shape(),
            right: right.shape(),
        });
    }
    if !(baseline >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "baseline must be non-negative, got {baseline}"
        )));
    }
    let mut out = DepthImage::new(left.width(), left.height());
    let fb = fx * baseline;
    for v in 0..left.height() {
        for u in 0..left.width() {
            let dl = left.get(v, u);
            if dl == INVALID {
                continue;
            }
            let dl64 = dl as f64;
            let u_r = u as f64 - fb / (dl64 + DISPARITY_EPS);
            if let Some(dr) = sample_row(right, v, u_r) {
                if (dl64 - dr).abs() < tau * dl64 {
                    out.set(v, u, dl);
                }
            }
        }
    }
    Ok(out)
}

/// Convolution with `kernel + I`, edge-replicated. Holes pass through and
/// are left out of their neighbors' sums; the remaining weights are rescaled
/// so they still add up to the full kernel sum.
pub fn random_conv(img: &DepthImage, kernel: &[[f64; 3]; 3]) -> DepthImage {
    let (h, w) = (img.height(), img.width());
    let mut k = *kernel;
    k[1][1] += 1.0;
    let total: f64 = k.iter().flatten().sum();
    let mut out = DepthImage::new(w, h);
    for r in 0..h {
        for c in 0..w {
            let center = img.get(r, c);
            if center == INVALID {
                continue;
            }
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (dr, krow) in k.iter().enumerate() {
                let rr = (r as i64 + dr as i64 - 1).clamp(0, h as i64 - 1) as usize;
                for (dc, &kv) in krow.iter().enumerate() {
                    let cc = (c as i64 + dc as i64 - 1).clamp(0, w as i64 - 1) as usize;
                    let d = img.get(rr, cc);
                    if d != INVALID {
                        acc += kv * d as f64;
                        weight += kv;
                    }
                }
            }
            let value = if weight == total {
                acc
            } else {
                acc * (total / weight)
            };
            out.set(r, c, keep_valid(value));
        }
    }
    out
}

/// Additive `N(0, sigma(d)^2)` noise with `sigma(d) = |c0 + c1 d + c2 d^2|`.
/// Pixel `i` uses the independent sub-sequence `draws.fork(i)`.
pub fn gaussian_noise(img: &DepthImage, coeffs: &[f64; 3], draws: &Draws) -> DepthImage {
    if coeffs.iter().all(|&c| c == 0.0) {
        return img.clone();
    }
    img.map_valid(|i, d| {
        let sigma = quadratic_sigma(coeffs, d as f64);
        let n = draws.fork(i as u64).standard_normal();
        keep_valid(d as f64 + sigma * n)
    })
}

/// Adds `sigma_p(d) * n(u, v)` with `sigma_p(d) = |c0 + c1 d + c2 d^2|`.
pub fn perlin_noise(img: &DepthImage, coeffs: &[f64; 3], field: &PerlinField) -> Result<DepthImage> {
    if (field.height(), field.width()) != img.shape() {
        return Err(Error::DimensionMismatch {
            left: img.shape(),
            right: (field.height(), field.width()),
        });
    }
    Ok(img.map_valid(|i, d| {
        let sigma = quadratic_sigma(coeffs, d as f64);
        keep_valid(d as f64 + sigma * field.values()[i] as f64)
    }))
}

/// Multiplies every valid pixel by `s`.
pub fn scale_depth(img: &DepthImage, s: f64) -> DepthImage {
    img.map_valid(|_, d| keep_valid(d as f64 * s))
}

/// Dead pixels: each pixel independently becomes a hole with probability
/// `p_zero`. Pixel `i` uses draw index `i`.
pub fn zero_failures(img: &DepthImage, p_zero: f64, draws: &Draws) -> DepthImage {
    if p_zero <= 0.0 {
        return img.clone();
    }
    let mut d = draws.clone();
    img.map_valid(|i, v| {
        d.seek(i as u64);
        if d.unit() < p_zero {
            INVALID
        } else {
            v
        }
    })
}

/// Saturated pixels: each valid pixel independently reads `d_max` with
/// probability `p_max`. Holes stay holes.
pub fn max_failures(img: &DepthImage, p_max: f64, d_max: f64, draws: &Draws) -> DepthImage {
    if p_max <= 0.0 {
        return img.clone();
    }
    let mut d = draws.clone();
    img.map_valid(|i, v| {
        d.seek(i as u64);
        if d.unit() < p_max {
            d_max as f32
        } else {
            v
        }
    })
}

/// Dead then saturated pixel failures. Dead-pixel decisions use
/// `draws.fork(0)`, saturation decisions `draws.fork(1)`.
pub fn pixel_failures(
    img: &DepthImage,
    p_zero: f64,
    p_max: f64,
    d_max: f64,
    draws: &Draws,
) -> Result<DepthImage> {
    for p in [p_zero, p_max] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "failure probability {p} outside [0, 1]"
            )));
        }
    }
    let dead = zero_failures(img, p_zero, &draws.fork(0));
    Ok(max_failures(&dead, p_max, d_max, &draws.fork(1)))
}

/// Clamps valid pixels to `[d_min, d_max]` and maps them affinely onto
/// `[0, 1]`. Holes map to 0.0, the same value as `d_min`.
pub fn clip_normalize(img: &DepthImage, d_min: f64, d_max: f64) -> Result<DepthImage> {
    if !(d_min < d_max) {
        return Err(Error::InvalidArgument(format!(
            "clip range [{d_min}, {d_max}] is empty"
        )));
    }
    let (lo, hi) = (d_min as f32, d_max as f32);
    let span = hi - lo;
    let data = img
        .data()
        .iter()
        .map(|&d| {
            if d == INVALID {
                0.0
            } else {
                (d.clamp(lo, hi) - lo) / span
            }
        })
        .collect();
    DepthImage::from_vec(img.width(), img.height(), data)
}

/// `out(i, j) = in(i + top, j + left)`.
pub fn crop(img: &DepthImage, crop: Crop) -> Result<DepthImage> {
    let (h, w) = img.shape();
    if h < crop.top + crop.bottom + 1 || w < crop.left + crop.right + 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot crop {crop:?} from a {h}x{w} image"
        )));
    }
    let (oh, ow) = (h - crop.top - crop.bottom, w - crop.left - crop.right);
    let mut data = Vec::with_capacity(oh * ow);
    for r in 0..oh {
        data.extend_from_slice(&img.row(r + crop.top)[crop.left..crop.left + ow]);
    }
    DepthImage::from_vec(ow, oh, data)
}

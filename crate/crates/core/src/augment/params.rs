use serde::{Deserialize, Serialize};

use crate::rng::{Purpose, RngStream};

pub const TAU_RANGE: (f64, f64) = (0.05, 0.20);
pub const CONV_WEIGHT_BOUND: f64 = 0.05;
pub const GAUSS_COEFF_BOUND: f64 = 0.03;
pub const PERLIN_COEFF_BOUND: f64 = 0.02;
pub const SCALE_RANGE: (f64, f64) = (0.90, 1.10);
pub const P_ZERO: f64 = 0.001;
pub const P_MAX: f64 = 0.001;
pub const CLIP_RANGE: (f64, f64) = (0.3, 2.0);
pub const DELAY_RANGE: (u32, u32) = (2, 4);

/// Pixels removed from `(top, bottom, left, right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crop {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

pub const DEFAULT_CROP: Crop = Crop {
    top: 3,
    bottom: 3,
    left: 4,
    right: 4,
};

/// The full randomization state for one environment at one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct AugmentParams {
    /// Disparity consistency threshold, relative to depth.
    pub tau: f64,
    /// Perturbation added to the identity 3x3 kernel, row-major.
    pub conv_kernel: [[f64; 3]; 3],
    /// `sigma(d) = |c0 + c1 d + c2 d^2|` of the additive Gaussian noise.
    pub gauss_coeffs: [f64; 3],
    /// Same polynomial form for the Perlin amplitude.
    pub perlin_coeffs: [f64; 3],
    pub scale: f64,
    pub p_zero: f64,
    pub p_max: f64,
    /// `(d_min, d_max)` meters.
    pub clip: (f64, f64),
    pub crop: Crop,
    /// Observation delay in frames, fixed for the environment lifetime.
    pub delay_frames: u32,
}

/// Samples the startup-stage delay and the per-frame operator parameters for
/// the stream's current frame.
pub fn sample_params(rng: &RngStream) -> AugmentParams {
    let delay_frames = sample_delay(rng);
    let mut d = rng.draws(Purpose::FrameParams);
    let tau = d.uniform(TAU_RANGE.0, TAU_RANGE.1);
    let mut conv_kernel = [[0.0; 3]; 3];
    for row in &mut conv_kernel {
        for w in row.iter_mut() {
            *w = d.uniform(-CONV_WEIGHT_BOUND, CONV_WEIGHT_BOUND);
        }
    }
    let mut gauss_coeffs = [0.0; 3];
    for c in &mut gauss_coeffs {
        *c = d.uniform(-GAUSS_COEFF_BOUND, GAUSS_COEFF_BOUND);
    }
    let mut perlin_coeffs = [0.0; 3];
    for c in &mut perlin_coeffs {
        *c = d.uniform(-PERLIN_COEFF_BOUND, PERLIN_COEFF_BOUND);
    }
    let scale = d.uniform(SCALE_RANGE.0, SCALE_RANGE.1);
    AugmentParams {
        tau,
        conv_kernel,
        gauss_coeffs,
        perlin_coeffs,
        scale,
        p_zero: P_ZERO,
        p_max: P_MAX,
        clip: CLIP_RANGE,
        crop: DEFAULT_CROP,
        delay_frames,
    }
}

/// Observation delay, drawn once per environment from `{2, 3, 4}`.
pub fn sample_delay(rng: &RngStream) -> u32 {
    rng.draws(Purpose::Startup)
        .uniform_int(DELAY_RANGE.0, DELAY_RANGE.1)
}

/// `|c0 + c1 d + c2 d^2|`.
#[inline]
pub fn quadratic_sigma(coeffs: &[f64; 3], depth: f64) -> f64 {
    (coeffs[0] + coeffs[1] * depth + coeffs[2] * depth * depth).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_stream_gives_nominal_values() {
        let p = sample_params(&RngStream::midpoint());
        assert_eq!(p.tau, 0.125);
        assert_eq!(p.scale, 1.0);
        assert_eq!(p.conv_kernel, [[0.0; 3]; 3]);
        assert_eq!(p.gauss_coeffs, [0.0; 3]);
        assert_eq!(p.perlin_coeffs, [0.0; 3]);
        assert_eq!(p.delay_frames, 3);
    }

    #[test]
    fn fixed_constants() {
        let p = sample_params(&RngStream::new(12, 4).with_frame(9));
        assert_eq!(p.p_zero, 0.001);
        assert_eq!(p.p_max, 0.001);
        assert_eq!(p.clip, (0.3, 2.0));
        assert_eq!(p.crop, DEFAULT_CROP);
    }

    #[test]
    fn ranges_hold() {
        for env in 0..50 {
            for frame in 0..20 {
                let p = sample_params(&RngStream::new(1, env).with_frame(frame));
                assert!((0.05..=0.20).contains(&p.tau));
                assert!(p.conv_kernel.iter().flatten().all(|w| w.abs() <= 0.05));
                assert!(p.gauss_coeffs.iter().all(|c| c.abs() <= 0.03));
                assert!(p.perlin_coeffs.iter().all(|c| c.abs() <= 0.02));
                assert!((0.90..=1.10).contains(&p.scale));
                assert!((2..=4).contains(&p.delay_frames));
            }
        }
    }

    #[test]
    fn delay_is_fixed_per_env_but_frame_params_vary() {
        let s = RngStream::new(8, 3);
        let a = sample_params(&s.clone().with_frame(0));
        let b = sample_params(&s.clone().with_frame(1));
        assert_eq!(a.delay_frames, b.delay_frames);
        assert_ne!(a.tau, b.tau);
        assert_ne!(a.gauss_coeffs, b.gauss_coeffs);
    }

    #[test]
    fn tau_monte_carlo() {
        let n = 100_000u64;
        let (mut lo, mut hi, mut sum) = (f64::MAX, f64::MIN, 0.0);
        for k in 0..n {
            let t = sample_params(&RngStream::new(77, k % 97).with_frame(k)).tau;
            lo = lo.min(t);
            hi = hi.max(t);
            sum += t;
        }
        let mean = sum / n as f64;
        assert!(lo >= 0.05 && hi <= 0.20);
        assert!((mean - 0.125).abs() <= 0.002, "mean {mean}");
    }

    #[test]
    fn sigma_is_absolute() {
        assert_eq!(quadratic_sigma(&[-0.03, 0.0, 0.0], 1.0), 0.03);
        assert!((quadratic_sigma(&[0.0, 0.0, 0.03], 2.0) - 0.12).abs() < 1e-15);
    }
}

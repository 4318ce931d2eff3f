//! Realistic depth-sensor augmentation.
//!
//! Operator order: stereo fusion, random convolution, Gaussian noise, Perlin
//! noise, scale, dead pixels, saturated pixels, clip + normalize + crop, then
//! the observation delay.

mod delay;
pub mod ops;
mod params;
mod pipeline;

pub use delay::{DelayBuffer, DELAY_CAPACITY};
pub use ops::{
    clip_normalize, crop, gaussian_noise, max_failures, perlin_noise, pixel_failures,
    random_conv, scale_depth, stereo_fuse, zero_failures, DISPARITY_EPS, MIN_VALID_DEPTH,
};
pub use params::{
    quadratic_sigma, sample_delay, sample_params, AugmentParams, Crop, CLIP_RANGE,
    CONV_WEIGHT_BOUND, DEFAULT_CROP, DELAY_RANGE, GAUSS_COEFF_BOUND, PERLIN_COEFF_BOUND, P_MAX,
    P_ZERO, SCALE_RANGE, TAU_RANGE,
};
pub use pipeline::{
    clean_observation, process_frame, process_frame_traced, AugmentOutput, EnvAugmenter, Stage,
    StageTimes, StageToggles, StageTrace,
};

/// Output height and width after cropping.
pub const OUTPUT_HEIGHT: usize = 24;
pub const OUTPUT_WIDTH: usize = 32;

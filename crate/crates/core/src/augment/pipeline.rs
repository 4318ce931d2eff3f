use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::image::DepthImage;
use crate::perlin::PerlinField;
use crate::rng::{Purpose, RngStream};

use super::delay::DelayBuffer;
use super::ops;
use super::params::{sample_delay, sample_params, AugmentParams};

/// Per-operator switches. Disabled stages pass their input through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StageToggles {
    pub fuse: bool,
    pub conv: bool,
    pub gauss: bool,
    pub perlin: bool,
    pub scale: bool,
    pub failures: bool,
    pub delay: bool,
}

impl Default for StageToggles {
    fn default() -> Self {
        Self {
            fuse: true,
            conv: true,
            gauss: true,
            perlin: true,
            scale: true,
            failures: true,
            delay: true,
        }
    }
}

impl StageToggles {
    pub fn all_off() -> Self {
        Self {
            fuse: false,
            conv: false,
            gauss: false,
            perlin: false,
            scale: false,
            failures: false,
            delay: false,
        }
    }
}

/// Timed sections of one environment step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Render,
    Fuse,
    Conv,
    Gauss,
    Perlin,
    Scale,
    Failures,
    ClipCrop,
    Delay,
    Clean,
}

impl Stage {
    pub const ALL: [Stage; 10] = [
        Stage::Render,
        Stage::Fuse,
        Stage::Conv,
        Stage::Gauss,
        Stage::Perlin,
        Stage::Scale,
        Stage::Failures,
        Stage::ClipCrop,
        Stage::Delay,
        Stage::Clean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Render => "render",
            Stage::Fuse => "fuse",
            Stage::Conv => "conv",
            Stage::Gauss => "gauss",
            Stage::Perlin => "perlin",
            Stage::Scale => "scale",
            Stage::Failures => "failures",
            Stage::ClipCrop => "clip_crop",
            Stage::Delay => "delay",
            Stage::Clean => "clean",
        }
    }
}

/// Accumulated busy time per stage plus the total of the timed sections.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StageTimes {
    pub per_stage: [Duration; 10],
    pub total: Duration,
}

impl StageTimes {
    pub fn add(&mut self, stage: Stage, d: Duration) {
        self.per_stage[stage as usize] += d;
    }

    pub fn get(&self, stage: Stage) -> Duration {
        self.per_stage[stage as usize]
    }

    pub fn merge(&mut self, other: &StageTimes) {
        for (a, b) in self.per_stage.iter_mut().zip(&other.per_stage) {
            *a += *b;
        }
        self.total += other.total;
    }

    pub fn stage_sum(&self) -> Duration {
        self.per_stage.iter().sum()
    }
}

fn timed<T>(times: &mut Option<&mut StageTimes>, stage: Stage, f: impl FnOnce() -> T) -> T {
    match times {
        Some(t) => {
            let start = Instant::now();
            let out = f();
            t.add(stage, start.elapsed());
            out
        }
        None => f(),
    }
}

/// Intermediate images of one frame, in pipeline order.
#[derive(Clone, Debug)]
pub struct StageTrace {
    pub params: AugmentParams,
    pub fused: DepthImage,
    pub conv: DepthImage,
    pub gauss: DepthImage,
    pub perlin: DepthImage,
    pub scaled: DepthImage,
    pub zero_failures: DepthImage,
    pub max_failures: DepthImage,
    /// Clipped, normalized and cropped, before the delay buffer.
    pub normalized: DepthImage,
}

impl StageTrace {
    /// `(name, image, normalized)` for each of the eight stage panels.
    pub fn panels(&self) -> [(&'static str, &DepthImage, bool); 8] {
        [
            ("fuse", &self.fused, false),
            ("conv", &self.conv, false),
            ("gauss", &self.gauss, false),
            ("perlin", &self.perlin, false),
            ("scale", &self.scaled, false),
            ("zero_failures", &self.zero_failures, false),
            ("max_failures", &self.max_failures, false),
            ("clip_crop", &self.normalized, true),
        ]
    }
}

/// Runs the eight operators on one stereo pair with the given parameters.
/// `rng` must be positioned at the frame being processed. Returns the
/// normalized, cropped student image (not yet delayed).
pub fn process_frame(
    params: &AugmentParams,
    rng: &RngStream,
    fx: f64,
    baseline: f64,
    toggles: &StageToggles,
    left: &DepthImage,
    right: &DepthImage,
    mut times: Option<&mut StageTimes>,
) -> Result<(DepthImage, Option<StageTrace>)> {
    process_inner(params, rng, fx, baseline, toggles, left, right, &mut times, false)
}

/// Same as [`process_frame`] but keeps every intermediate image.
pub fn process_frame_traced(
    params: &AugmentParams,
    rng: &RngStream,
    fx: f64,
    baseline: f64,
    toggles: &StageToggles,
    left: &DepthImage,
    right: &DepthImage,
) -> Result<StageTrace> {
    let (_, trace) = process_inner(params, rng, fx, baseline, toggles, left, right, &mut None, true)?;
    Ok(trace.expect("trace requested"))
}

#[allow(clippy::too_many_arguments)]
fn process_inner(
    params: &AugmentParams,
    rng: &RngStream,
    fx: f64,
    baseline: f64,
    toggles: &StageToggles,
    left: &DepthImage,
    right: &DepthImage,
    times: &mut Option<&mut StageTimes>,
    keep: bool,
) -> Result<(DepthImage, Option<StageTrace>)> {
    let (h, w) = left.shape();
    let fused = timed(times, Stage::Fuse, || {
        if toggles.fuse {
            ops::stereo_fuse(left, right, fx, baseline, params.tau)
        } else {
            Ok(left.clone())
        }
    })?;
    let conv = timed(times, Stage::Conv, || {
        if toggles.conv {
            ops::random_conv(&fused, &params.conv_kernel)
        } else {
            fused.clone()
        }
    });
    let gauss = timed(times, Stage::Gauss, || {
        if toggles.gauss {
            ops::gaussian_noise(&conv, &params.gauss_coeffs, &rng.draws(Purpose::Gaussian))
        } else {
            conv.clone()
        }
    });
    let perlin = timed(times, Stage::Perlin, || {
        if toggles.perlin && params.perlin_coeffs.iter().any(|&c| c != 0.0) {
            let field = PerlinField::generate(w, h, &mut rng.draws(Purpose::Perlin));
            ops::perlin_noise(&gauss, &params.perlin_coeffs, &field)
        } else {
            Ok(gauss.clone())
        }
    })?;
    let scaled = timed(times, Stage::Scale, || {
        if toggles.scale {
            ops::scale_depth(&perlin, params.scale)
        } else {
            perlin.clone()
        }
    });
    let (zero, max) = timed(times, Stage::Failures, || {
        if toggles.failures {
            let draws = rng.draws(Purpose::Failures);
            let zero = ops::zero_failures(&scaled, params.p_zero, &draws.fork(0));
            let max = ops::max_failures(&zero, params.p_max, params.clip.1, &draws.fork(1));
            (zero, max)
        } else {
            (scaled.clone(), scaled.clone())
        }
    });
    let normalized = timed(times, Stage::ClipCrop, || {
        ops::clip_normalize(&max, params.clip.0, params.clip.1)
            .and_then(|img| ops::crop(&img, params.crop))
    })?;
    let trace = keep.then(|| StageTrace {
        params: params.clone(),
        fused,
        conv,
        gauss,
        perlin,
        scaled,
        zero_failures: zero,
        max_failures: max,
        normalized: normalized.clone(),
    });
    Ok((normalized, trace))
}

/// The noiseless counterpart: clip, normalize and crop of the left render.
pub fn clean_observation(left: &DepthImage, params: &AugmentParams) -> Result<DepthImage> {
    ops::crop(&ops::clip_normalize(left, params.clip.0, params.clip.1)?, params.crop)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentOutput {
    /// Augmented, delayed, normalized 24x32 observation.
    pub student: DepthImage,
    /// Clean normalized 24x32 observation of the current frame.
    pub clean: DepthImage,
}

/// Mutable augmentation state owned by one environment: its random stream,
/// camera constants for the fusion step, and the delay buffer.
#[derive(Clone, Debug)]
pub struct EnvAugmenter {
    rng: RngStream,
    fx: f64,
    baseline: f64,
    toggles: StageToggles,
    delay: DelayBuffer,
}

impl EnvAugmenter {
    pub fn new(rng: RngStream, fx: f64, baseline: f64, toggles: StageToggles) -> Self {
        let delay_frames = if toggles.delay { sample_delay(&rng) } else { 0 };
        Self {
            rng,
            fx,
            baseline,
            toggles,
            delay: DelayBuffer::new(delay_frames),
        }
    }

    pub fn frame(&self) -> u64 {
        self.rng.frame
    }

    pub fn env_id(&self) -> u64 {
        self.rng.env_id
    }

    pub fn delay_frames(&self) -> usize {
        self.delay.delay()
    }

    pub fn toggles(&self) -> &StageToggles {
        &self.toggles
    }

    /// Parameters that the next call to [`Self::augment_frame`] will use.
    pub fn current_params(&self) -> AugmentParams {
        let mut p = sample_params(&self.rng);
        p.delay_frames = self.delay.delay() as u32;
        p
    }

    pub fn augment_frame(&mut self, left: &DepthImage, right: &DepthImage) -> Result<AugmentOutput> {
        self.augment_frame_timed(left, right, None)
    }

    pub fn augment_frame_timed(
        &mut self,
        left: &DepthImage,
        right: &DepthImage,
        mut times: Option<&mut StageTimes>,
    ) -> Result<AugmentOutput> {
        let params = self.current_params();
        let (processed, _) = process_frame(
            &params,
            &self.rng,
            self.fx,
            self.baseline,
            &self.toggles,
            left,
            right,
            times.as_deref_mut(),
        )?;
        let student = timed(&mut times, Stage::Delay, || self.delay.push(processed));
        let clean = timed(&mut times, Stage::Clean, || clean_observation(left, &params))?;
        self.rng.advance_frame();
        Ok(AugmentOutput { student, clean })
    }

    /// Like [`Self::augment_frame`], also returning every intermediate image.
    pub fn augment_frame_traced(
        &mut self,
        left: &DepthImage,
        right: &DepthImage,
    ) -> Result<(AugmentOutput, StageTrace)> {
        let params = self.current_params();
        let trace = process_frame_traced(
            &params,
            &self.rng,
            self.fx,
            self.baseline,
            &self.toggles,
            left,
            right,
        )?;
        let student = self.delay.push(trace.normalized.clone());
        let clean = clean_observation(left, &params)?;
        self.rng.advance_frame();
        Ok((AugmentOutput { student, clean }, trace))
    }
}

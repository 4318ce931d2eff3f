//! Batched render-and-augment over many environments.
//!
//! Output tensors are contiguous `N x 1 x 24 x 32` little-endian `f32`,
//! environment-major. Every environment owns its random stream, so results
//! are identical for any worker count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::augment::{EnvAugmenter, StageTimes, StageTrace, Stage, OUTPUT_HEIGHT, OUTPUT_WIDTH};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::image::DepthImage;
use crate::render::{render_stereo, sample_rig, torso_pose, StereoRig};
use crate::rng::RngStream;
use crate::terrain::{make_terrain, BasePose, Heightfield, TerrainFamily};

/// Nominal torso height above the local ground, meters.
pub const TORSO_HEIGHT: f64 = 0.8;
pub const FRAME_LEN: usize = OUTPUT_HEIGHT * OUTPUT_WIDTH;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TensorDesc {
    pub shape: [usize; 4],
    pub dtype: &'static str,
    pub layout: &'static str,
}

impl TensorDesc {
    pub fn batch(n: usize) -> Self {
        Self {
            shape: [n, 1, OUTPUT_HEIGHT, OUTPUT_WIDTH],
            dtype: "float32",
            layout: "nchw_le",
        }
    }

    pub fn elements(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn byte_len(&self) -> usize {
        self.elements() * 4
    }
}

struct EnvSlot {
    field: Arc<Heightfield>,
    rig: StereoRig,
    augmenter: EnvAugmenter,
}

/// Frame images captured for one environment when tracing is requested.
#[derive(Clone, Debug)]
pub struct EnvTrace {
    pub env: usize,
    pub left: DepthImage,
    pub right: DepthImage,
    pub stages: StageTrace,
}

pub struct Engine {
    config: RunConfig,
    envs: Vec<EnvSlot>,
    student: Vec<f32>,
    clean: Vec<f32>,
    batch: usize,
}

impl Engine {
    /// Generates terrain from the config: one shared field, or one field per
    /// environment for the rough family.
    pub fn new(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let shared = if config.terrain.family == TerrainFamily::Rough {
            None
        } else {
            Some(Arc::new(make_terrain(&config.terrain_spec(0))?))
        };
        Self::build(config, shared)
    }

    /// Every environment runs on `field`; the terrain section is ignored.
    pub fn with_field(config: &RunConfig, field: Heightfield) -> Result<Self> {
        config.validate()?;
        Self::build(config, Some(Arc::new(field)))
    }

    fn build(config: &RunConfig, shared: Option<Arc<Heightfield>>) -> Result<Self> {
        let nominal = config.nominal_rig();
        let envs = (0..config.run.envs)
            .map(|env| {
                let rng = RngStream::new(config.run.seed, env as u64);
                let field = match &shared {
                    Some(f) => Arc::clone(f),
                    None => Arc::new(make_terrain(&config.terrain_spec(env as u64))?),
                };
                let rig = if config.rig.randomize {
                    sample_rig(&nominal, &rng)
                } else {
                    nominal
                };
                let augmenter =
                    EnvAugmenter::new(rng, rig.left.intrinsics.fx, rig.baseline, config.augment);
                Ok(EnvSlot {
                    field,
                    rig,
                    augmenter,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = envs.len();
        Ok(Self {
            config: config.clone(),
            envs,
            student: vec![0.0; n * FRAME_LEN],
            clean: vec![0.0; n * FRAME_LEN],
            batch: n,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn env_count(&self) -> usize {
        self.envs.len()
    }

    pub fn field(&self, env: usize) -> &Heightfield {
        &self.envs[env].field
    }

    pub fn rig(&self, env: usize) -> &StereoRig {
        &self.envs[env].rig
    }

    pub fn delay_frames(&self, env: usize) -> usize {
        self.envs[env].augmenter.delay_frames()
    }

    pub fn frame(&self, env: usize) -> u64 {
        self.envs[env].augmenter.frame()
    }

    /// Student tensor of the last batch.
    pub fn student(&self) -> &[f32] {
        &self.student[..self.batch * FRAME_LEN]
    }

    /// Clean tensor of the last batch.
    pub fn clean(&self) -> &[f32] {
        &self.clean[..self.batch * FRAME_LEN]
    }

    pub fn descriptor(&self) -> TensorDesc {
        TensorDesc::batch(self.batch)
    }

    /// Pose of environment `env` at `frame` when every robot walks forward
    /// along the course centerline at `run.speed` meters per frame.
    pub fn course_pose(&self, env: usize, frame: u64) -> BasePose {
        let field = &self.envs[env].field;
        let (x_min, x_max, _, _) = field.bounds();
        let start = x_min + 0.5;
        let span = (x_max - SCAN_MARGIN - start).max(0.1);
        let x = start + (frame as f64 * self.config.run.speed).rem_euclid(span);
        let ground = (-2..=2)
            .map(|k| field.height_at(x + 0.15 * k as f64, 0.0))
            .fold(f64::NEG_INFINITY, f64::max);
        BasePose::new(x, 0.0, 0.0, ground + TORSO_HEIGHT)
    }

    /// Course poses of all environments at their current frames.
    pub fn course_poses(&self) -> Vec<BasePose> {
        (0..self.envs.len())
            .map(|e| self.course_pose(e, self.frame(e)))
            .collect()
    }

    /// Renders and augments one frame for every environment at `poses`.
    pub fn step(&mut self, poses: &[BasePose]) -> Result<()> {
        self.step_inner(poses, false, None).map(|_| ())
    }

    /// [`Self::step`] with per-stage timings summed over environments.
    pub fn step_timed(&mut self, poses: &[BasePose]) -> Result<StageTimes> {
        self.step_inner(poses, true, None).map(|(t, _)| t)
    }

    /// [`Self::step`] that also keeps every intermediate image of `env`.
    pub fn step_traced(&mut self, poses: &[BasePose], env: usize) -> Result<EnvTrace> {
        if env >= self.envs.len() {
            return Err(Error::InvalidArgument(format!("no environment {env}")));
        }
        let (_, trace) = self.step_inner(poses, false, Some(env))?;
        Ok(trace.expect("traced environment"))
    }

    fn step_inner(
        &mut self,
        poses: &[BasePose],
        timing: bool,
        trace_env: Option<usize>,
    ) -> Result<(StageTimes, Option<EnvTrace>)> {
        if poses.len() != self.envs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} poses for {} environments",
                poses.len(),
                self.envs.len()
            )));
        }
        self.batch = self.envs.len();
        let results: Vec<Result<(StageTimes, Option<EnvTrace>)>> = self
            .envs
            .par_iter_mut()
            .zip(self.student.par_chunks_mut(FRAME_LEN))
            .zip(self.clean.par_chunks_mut(FRAME_LEN))
            .zip(poses.par_iter())
            .enumerate()
            .map(|(env, (((slot, student), clean), pose))| {
                let mut times = StageTimes::default();
                let start = std::time::Instant::now();
                let torso = torso_pose(pose.x, pose.y, pose.z, pose.yaw);
                let (left, right) = render_stereo(&slot.field, &torso, &slot.rig)?;
                if timing {
                    times.add(Stage::Render, start.elapsed());
                }
                let trace = if trace_env == Some(env) {
                    let (out, stages) = slot.augmenter.augment_frame_traced(&left, &right)?;
                    student.copy_from_slice(out.student.data());
                    clean.copy_from_slice(out.clean.data());
                    Some(EnvTrace {
                        env,
                        left,
                        right,
                        stages,
                    })
                } else {
                    let out = slot.augmenter.augment_frame_timed(
                        &left,
                        &right,
                        timing.then_some(&mut times),
                    )?;
                    student.copy_from_slice(out.student.data());
                    clean.copy_from_slice(out.clean.data());
                    None
                };
                if timing {
                    times.total = start.elapsed();
                }
                Ok((times, trace))
            })
            .collect();
        let mut total = StageTimes::default();
        let mut trace = None;
        for r in results {
            let (t, tr) = r?;
            total.merge(&t);
            trace = trace.or(tr);
        }
        Ok((total, trace))
    }

    /// Augments externally rendered pairs for the listed environments. The
    /// output batch has one frame per entry of `env_ids`, in that order.
    pub fn process(&mut self, env_ids: &[usize], pairs: &[(DepthImage, DepthImage)]) -> Result<()> {
        if env_ids.len() != pairs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} environment ids for {} image pairs",
                env_ids.len(),
                pairs.len()
            )));
        }
        let mut seen = vec![false; self.envs.len()];
        for &e in env_ids {
            if e >= self.envs.len() {
                return Err(Error::InvalidArgument(format!("no environment {e}")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidArgument(format!("environment {e} listed twice")));
            }
        }
        let mut slots: Vec<Option<&mut EnvSlot>> = self.envs.iter_mut().map(Some).collect();
        let mut work: Vec<&mut EnvSlot> = env_ids.iter().map(|&e| slots[e].take().unwrap()).collect();
        let results: Vec<Result<()>> = work
            .par_iter_mut()
            .zip(self.student.par_chunks_mut(FRAME_LEN))
            .zip(self.clean.par_chunks_mut(FRAME_LEN))
            .zip(pairs.par_iter())
            .map(|(((slot, student), clean), (left, right))| {
                let out = slot.augmenter.augment_frame(left, right)?;
                student.copy_from_slice(out.student.data());
                clean.copy_from_slice(out.clean.data());
                Ok(())
            })
            .collect();
        results.into_iter().collect::<Result<()>>()?;
        self.batch = env_ids.len();
        Ok(())
    }
}

/// Distance kept between the walking range and the far edge so the scan and
/// the cameras stay over the field.
const SCAN_MARGIN: f64 = 1.5;

/// Encodes `values` as little-endian bytes.
pub fn f32_le_bytes(values: &[f32]) -> Vec<u8> {
    values.iter().flat_map(|v| v.to_le_bytes()).collect()
}

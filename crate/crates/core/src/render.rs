//! Pinhole ray casting of heightfields into z-depth images, plus the
//! startup-time calibration randomization of the stereo rig.
//!
//! Camera optical frame: `x` right, `y` down, `z` along the optical axis.
//! Mount frame (on the torso): `x` forward, `y` left, `z` up; a positive
//! mount pitch tilts the camera towards the ground.

use nalgebra::{Isometry3, Matrix3, Point3, Rotation3, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::DepthImage;
use crate::rng::{Purpose, RngStream};
use crate::terrain::Heightfield;

/// Longest ray, in meters, before a pixel is declared a miss.
pub const MAX_MARCH_DISTANCE: f64 = 4.0;
/// Padding of the height slab the march is restricted to; keeps the
/// interval open on perfectly flat fields.
const SLAB_MARGIN: f64 = 1e-3;
/// Bisection steps applied inside the bracketing march step before the final
/// secant estimate.
const REFINE_STEPS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

impl CameraIntrinsics {
    /// Principal point at the image center (pixel centers at integer coordinates).
    pub fn centered(width: usize, height: usize, fx: f64, fy: f64) -> Self {
        Self {
            fx,
            fy,
            cx: (width as f64 - 1.0) / 2.0,
            cy: (height as f64 - 1.0) / 2.0,
            width,
            height,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fx > 0.0 && self.fy > 0.0) {
            return Err(Error::InvalidCamera(format!(
                "focal lengths must be positive, got ({}, {})",
                self.fx, self.fy
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidCamera("empty image".into()));
        }
        let inside = |c: f64, n: usize| c >= 0.0 && c <= (n - 1) as f64;
        if !inside(self.cx, self.width) || !inside(self.cy, self.height) {
            return Err(Error::InvalidCamera(format!(
                "principal point ({}, {}) outside the image",
                self.cx, self.cy
            )));
        }
        Ok(())
    }
}

impl Default for CameraIntrinsics {
    /// 40x30 depth stream at roughly 85 degrees horizontal field of view.
    fn default() -> Self {
        CameraIntrinsics::centered(40, 30, 22.0, 22.0)
    }
}

/// Mounting offset of one camera relative to the nominal mount.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CameraExtrinsics {
    /// Position offset in the mount frame, meters.
    pub position: [f64; 3],
    /// Roll, pitch, yaw offset in radians.
    pub orientation: [f64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StereoCamera {
    pub intrinsics: CameraIntrinsics,
    pub extrinsics: CameraExtrinsics,
}

/// Nominal camera mount on the torso.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MountPose {
    /// Position in the torso frame, meters.
    pub position: [f64; 3],
    /// Roll, pitch, yaw in radians.
    pub orientation: [f64; 3],
}

impl Default for MountPose {
    fn default() -> Self {
        MountPose {
            position: [0.1, 0.0, 0.65],
            orientation: [0.0, 60f64.to_radians(), 0.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StereoRig {
    pub left: StereoCamera,
    pub right: StereoCamera,
    /// Distance between the optical centers, meters.
    pub baseline: f64,
    pub mount: MountPose,
}

impl StereoRig {
    pub fn new(intrinsics: CameraIntrinsics, baseline: f64, mount: MountPose) -> Self {
        let cam = StereoCamera {
            intrinsics,
            extrinsics: CameraExtrinsics::default(),
        };
        StereoRig {
            left: cam,
            right: cam,
            baseline,
            mount,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.left.intrinsics.validate()?;
        self.right.intrinsics.validate()?;
        let (l, r) = (self.left.intrinsics, self.right.intrinsics);
        if (l.width, l.height) != (r.width, r.height) {
            return Err(Error::InvalidCamera(
                "left and right cameras differ in resolution".into(),
            ));
        }
        if !(self.baseline >= 0.0) || !self.baseline.is_finite() {
            return Err(Error::InvalidCamera(format!(
                "baseline must be non-negative, got {}",
                self.baseline
            )));
        }
        Ok(())
    }

    /// World pose of each optical frame, `(left, right)`, for a torso pose.
    pub fn camera_poses(&self, torso: &Isometry3<f64>) -> (Isometry3<f64>, Isometry3<f64>) {
        let half = self.baseline / 2.0;
        (
            self.optical_pose(torso, &self.left.extrinsics, -half),
            self.optical_pose(torso, &self.right.extrinsics, half),
        )
    }

    fn optical_pose(
        &self,
        torso: &Isometry3<f64>,
        extr: &CameraExtrinsics,
        x_offset: f64,
    ) -> Isometry3<f64> {
        let m = &self.mount;
        let mount = Isometry3::from_parts(
            Translation3::new(
                m.position[0] + extr.position[0],
                m.position[1] + extr.position[1],
                m.position[2] + extr.position[2],
            ),
            rpy(m.orientation) * rpy(extr.orientation),
        );
        let shift = Isometry3::from_parts(
            Translation3::new(x_offset, 0.0, 0.0),
            UnitQuaternion::identity(),
        );
        torso * mount * body_to_optical() * shift
    }
}

impl Default for StereoRig {
    /// 5 cm baseline, mount 0.65 m above the base pitched 60 degrees down.
    fn default() -> Self {
        StereoRig::new(CameraIntrinsics::default(), 0.05, MountPose::default())
    }
}

fn rpy(a: [f64; 3]) -> UnitQuaternion<f64> {
    UnitQuaternion::from_euler_angles(a[0], a[1], a[2])
}

/// Rotation taking optical-frame vectors to a forward/left/up body frame.
pub fn body_to_optical() -> Isometry3<f64> {
    #[rustfmt::skip]
    let m = Matrix3::new(
        0.0,  0.0, 1.0,
       -1.0,  0.0, 0.0,
        0.0, -1.0, 0.0,
    );
    Isometry3::from_parts(
        Translation3::identity(),
        UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(m)),
    )
}

/// Torso pose from a planar base pose (no roll or pitch).
pub fn torso_pose(x: f64, y: f64, z: f64, yaw: f64) -> Isometry3<f64> {
    Isometry3::from_parts(
        Translation3::new(x, y, z),
        UnitQuaternion::from_euler_angles(0.0, 0.0, yaw),
    )
}

/// Camera looking along world `+x` (yaw 0), tilted down by `pitch` radians.
pub fn camera_pose(position: [f64; 3], roll: f64, pitch: f64, yaw: f64) -> Isometry3<f64> {
    let body = Isometry3::from_parts(
        Translation3::new(position[0], position[1], position[2]),
        UnitQuaternion::from_euler_angles(roll, pitch, yaw),
    );
    body * body_to_optical()
}

/// Ray-casts `field` from a camera whose optical frame has world pose
/// `camera`. Each pixel holds the z-depth of the first terrain intersection,
/// or 0.0 when the ray leaves the field or exceeds the march distance.
pub fn render_depth(
    field: &Heightfield,
    camera: &Isometry3<f64>,
    intr: &CameraIntrinsics,
) -> Result<DepthImage> {
    intr.validate()?;
    let origin = camera.translation.vector;
    if field.contains(origin.x, origin.y) {
        let ground = field.height_at(origin.x, origin.y);
        if origin.z <= ground {
            return Err(Error::CameraBelowTerrain {
                camera_z: origin.z,
                terrain_z: ground,
            });
        }
    }
    let rot = camera.rotation.to_rotation_matrix();
    let mut img = DepthImage::new(intr.width, intr.height);
    let caster = RayCaster::new(field, Point3::from(origin));
    for v in 0..intr.height {
        for u in 0..intr.width {
            let dir_cam = Vector3::new(
                (u as f64 - intr.cx) / intr.fx,
                (v as f64 - intr.cy) / intr.fy,
                1.0,
            );
            let dir = rot * dir_cam;
            if let Some(t) = caster.cast(dir) {
                img.set(v, u, t as f32);
            }
        }
    }
    Ok(img)
}

/// Renders the left and right views of `rig` mounted on `torso`.
pub fn render_stereo(
    field: &Heightfield,
    torso: &Isometry3<f64>,
    rig: &StereoRig,
) -> Result<(DepthImage, DepthImage)> {
    rig.validate()?;
    let (left_pose, right_pose) = rig.camera_poses(torso);
    let left = render_depth(field, &left_pose, &rig.left.intrinsics)?;
    let right = render_depth(field, &right_pose, &rig.right.intrinsics)?;
    Ok((left, right))
}

/// Startup calibration randomization: focal scales `U(0.90, 1.10)` and mount
/// offsets `U(-0.05, 0.05)^3` m, `U(-0.10, 0.10)^3` rad. One draw per
/// environment; both cameras receive the same perturbation.
pub fn sample_rig(nominal: &StereoRig, rng: &RngStream) -> StereoRig {
    let mut d = rng.draws(Purpose::Rig);
    let s_h = d.uniform(0.90, 1.10);
    let s_v = d.uniform(0.90, 1.10);
    let mut dp = [0.0; 3];
    for v in &mut dp {
        *v = d.uniform(-0.05, 0.05);
    }
    let mut dtheta = [0.0; 3];
    for v in &mut dtheta {
        *v = d.uniform(-0.10, 0.10);
    }
    let mut rig = *nominal;
    for cam in [&mut rig.left, &mut rig.right] {
        cam.intrinsics.fx *= s_h;
        cam.intrinsics.fy *= s_v;
        for k in 0..3 {
            cam.extrinsics.position[k] += dp[k];
            cam.extrinsics.orientation[k] += dtheta[k];
        }
    }
    rig
}

/// Marches rays against one heightfield from a fixed origin.
struct RayCaster<'a> {
    field: &'a Heightfield,
    origin: Point3<f64>,
    x0: f64,
    y0: f64,
    inv_res: f64,
    max_gx: f64,
    max_gy: f64,
    step: f64,
    top: f64,
    bottom: f64,
    slope: (f64, f64),
}

impl<'a> RayCaster<'a> {
    fn new(field: &'a Heightfield, origin: Point3<f64>) -> Self {
        let res = field.resolution() as f64;
        Self {
            field,
            origin,
            x0: field.origin().0 as f64,
            y0: field.origin().1 as f64,
            inv_res: 1.0 / res,
            max_gx: (field.cols() - 1) as f64,
            max_gy: (field.rows() - 1) as f64,
            step: 0.5 * res,
            top: field.max_height() as f64 + SLAB_MARGIN,
            bottom: field.min_height() as f64 - SLAB_MARGIN,
            slope: field.max_slope(),
        }
    }

    /// Height of the ray above the terrain at parameter `t`, or `None`
    /// outside the field.
    #[inline]
    fn clearance(&self, dir: &Vector3<f64>, t: f64) -> Option<f64> {
        let p = self.origin + dir * t;
        let gx = (p.x - self.x0) * self.inv_res;
        let gy = (p.y - self.y0) * self.inv_res;
        if gx < 0.0 || gy < 0.0 || gx > self.max_gx || gy > self.max_gy {
            return None;
        }
        Some(p.z - self.field.bilinear(gx, gy))
    }

    /// `t` such that `origin + t * dir` is the first hit. With `dir` having
    /// unit optical-axis component, `t` is the z-depth.
    fn cast(&self, dir: Vector3<f64>) -> Option<f64> {
        let len = dir.norm();
        let t_max = MAX_MARCH_DISTANCE / len;
        let dz = dir.z;
        let oz = self.origin.z;
        // Restrict the march to the slab between the lowest and highest terrain.
        let (t_lo, t_hi) = if dz < 0.0 {
            let enter = if oz > self.top { (oz - self.top) / -dz } else { 0.0 };
            (enter, (oz - self.bottom) / -dz)
        } else if oz > self.top {
            return None;
        } else if dz > 0.0 {
            (0.0, (self.top - oz) / dz)
        } else {
            (0.0, t_max)
        };
        if t_lo > t_max {
            return None;
        }
        let t_end = t_hi.min(t_max);
        let dt = self.step / len;
        // Clearance drops by at most `lip` per unit `t`, so a step of
        // `clearance / lip` cannot jump over a crossing.
        let lip = 1.0001 * (dir.z.abs() + self.slope.0 * dir.x.abs() + self.slope.1 * dir.y.abs());

        let mut t_prev = t_lo;
        let mut f_prev = self.clearance(&dir, t_lo);
        if let Some(f) = f_prev {
            if f <= 0.0 {
                return Some(t_lo);
            }
        }
        let mut t = t_lo;
        loop {
            if t >= t_end {
                break;
            }
            let skip = match f_prev {
                Some(f) if lip > 0.0 => f / lip,
                _ => 0.0,
            };
            t = (t + dt.max(skip)).min(t_end);
            let f = self.clearance(&dir, t);
            if let Some(fv) = f {
                if fv <= 0.0 {
                    return Some(self.refine(&dir, t_prev, f_prev, t, fv));
                }
            } else if f_prev.is_some() {
                // left the field; straight rays never re-enter it
                return None;
            }
            t_prev = t;
            f_prev = f;
        }
        None
    }

    /// Shrinks `[a, b]` (clearance positive or undefined at `a`, non-positive
    /// at `b`) and finishes with a secant step, exact on planar patches.
    fn refine(&self, dir: &Vector3<f64>, mut a: f64, fa: Option<f64>, mut b: f64, mut fb: f64) -> f64 {
        let mut fa = fa;
        for _ in 0..REFINE_STEPS {
            let m = 0.5 * (a + b);
            match self.clearance(dir, m) {
                Some(fm) if fm <= 0.0 => {
                    b = m;
                    fb = fm;
                }
                fm => {
                    a = m;
                    fa = fm;
                }
            }
        }
        match fa {
            Some(fa) if fa > fb => {
                let t = a + (b - a) * fa / (fa - fb);
                t.clamp(a, b)
            }
            _ => b,
        }
    }
}

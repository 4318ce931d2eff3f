use nalgebra::{Isometry3, Translation3, UnitQuaternion, Vector3};
use sdf_core::render::{
    camera_pose, render_depth, render_stereo, torso_pose, CameraIntrinsics, StereoRig,
    MAX_MARCH_DISTANCE,
};
use sdf_core::terrain::Heightfield;
use sdf_core::INVALID;

/// Plane `z = a x + b y + c` on a 12 m x 12 m grid starting at `(-6, -6)`.
/// Bilinear interpolation of a plane is exact, so the surface is the plane.
fn plane(a: f64, b: f64, c: f64) -> Heightfield {
    let n = 241;
    let res = 0.05f32;
    let mut h = Vec::with_capacity(n * n);
    for r in 0..n {
        for col in 0..n {
            let (x, y) = (-6.0 + col as f64 * 0.05, -6.0 + r as f64 * 0.05);
            h.push((a * x + b * y + c) as f32);
        }
    }
    Heightfield::new((-6.0, -6.0), res, n, n, h).unwrap()
}

/// Analytic z-depth of pixel `(u, v)` against the plane, or `None` when the
/// ray misses it, leaves the grid or exceeds the march distance.
fn plane_depth(
    cam: &Isometry3<f64>,
    intr: &CameraIntrinsics,
    (a, b, c): (f64, f64, f64),
    u: usize,
    v: usize,
) -> Option<f64> {
    let d_cam = Vector3::new((u as f64 - intr.cx) / intr.fx, (v as f64 - intr.cy) / intr.fy, 1.0);
    let d = cam.rotation * d_cam;
    let o = cam.translation.vector;
    let denom = d.z - a * d.x - b * d.y;
    if denom.abs() < 1e-12 {
        return None;
    }
    let t = (a * o.x + b * o.y + c - o.z) / denom;
    if t <= 0.0 {
        return None;
    }
    let p = o + d * t;
    if p.x.abs() > 6.0 || p.y.abs() > 6.0 || t * d.norm() > MAX_MARCH_DISTANCE {
        return None;
    }
    Some(t)
}

fn near_boundary(cam: &Isometry3<f64>, intr: &CameraIntrinsics, u: usize, v: usize, t: f64) -> bool {
    let d = cam.rotation
        * Vector3::new((u as f64 - intr.cx) / intr.fx, (v as f64 - intr.cy) / intr.fy, 1.0);
    let p = cam.translation.vector + d * t;
    (t * d.norm() - MAX_MARCH_DISTANCE).abs() < 1e-3 || 6.0 - p.x.abs().max(p.y.abs()) < 1e-3
}

#[test]
fn plane_sweep_matches_analytic_depth() {
    let intr = CameraIntrinsics::default();
    let mut checked = 0;
    let mut k = 0u32;
    for &(a, b) in &[(0.0, 0.0), (0.2, 0.0), (-0.3, 0.1), (0.1, 0.25), (0.45, -0.2)] {
        let c = 0.1;
        let field = plane(a, b, c);
        for &pitch_deg in &[20.0f64, 45.0, 60.0, 75.0, 89.0] {
            for &yaw in &[0.0f64, 0.8, -2.1] {
                k += 1;
                let roll = 0.05 * (k % 5) as f64 - 0.1;
                let (x, y) = (0.3 * (k % 3) as f64, -0.2 * (k % 4) as f64);
                let z = a * x + b * y + c + 0.4 + 0.15 * (k % 7) as f64;
                let cam = camera_pose([x, y, z], roll, pitch_deg.to_radians(), yaw);
                let img = render_depth(&field, &cam, &intr).unwrap();
                for v in 0..intr.height {
                    for u in 0..intr.width {
                        let got = img.get(v, u);
                        match plane_depth(&cam, &intr, (a, b, c), u, v) {
                            Some(t) if near_boundary(&cam, &intr, u, v, t) => {}
                            Some(t) => {
                                assert!(
                                    (got as f64 - t).abs() < 1e-4,
                                    "plane ({a},{b}) pitch {pitch_deg} yaw {yaw} px ({u},{v}): {got} vs {t}"
                                );
                                checked += 1;
                            }
                            None => assert_eq!(got, INVALID, "px ({u},{v}) should miss"),
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 50_000, "only {checked} pixels compared");
}

#[test]
fn straight_down_on_flat_ground() {
    let field = plane(0.0, 0.0, 0.0);
    let intr = CameraIntrinsics::default();
    let cam = camera_pose([0.0, 0.0, 1.25], 0.0, std::f64::consts::FRAC_PI_2, 0.0);
    let img = render_depth(&field, &cam, &intr).unwrap();
    // z-depth of a fronto-parallel plane is constant
    assert!(img.data().iter().all(|&d| (d - 1.25).abs() < 1e-5));
}

/// For a pure horizontal baseline, a left pixel of depth `d` reappears in the
/// right view `f_x b / d` columns to the left on the same row, also when the
/// whole rig is rolled.
#[test]
fn epipolar_shift_under_roll() {
    let field = plane(0.15, -0.1, 0.0);
    let intr = CameraIntrinsics::centered(40, 30, 22.0, 22.0);
    let b = 0.08;
    for &roll in &[0.0, 0.2, -0.35] {
        let left = camera_pose([0.0, 0.1, 1.2], roll, 55f64.to_radians(), 0.3);
        let right = left * Isometry3::from_parts(Translation3::new(b, 0.0, 0.0), UnitQuaternion::identity());
        let li = render_depth(&field, &left, &intr).unwrap();
        let ri = render_depth(&field, &right, &intr).unwrap();
        let mut checked = 0;
        for v in 0..30 {
            for u in 0..40 {
                let d = li.get(v, u) as f64;
                if d == 0.0 {
                    continue;
                }
                let ur = u as f64 - intr.fx * b / d;
                let c0 = ur.floor();
                if c0 < 0.0 || c0 + 1.0 > 39.0 {
                    continue;
                }
                let (d0, d1) = (ri.get(v, c0 as usize) as f64, ri.get(v, c0 as usize + 1) as f64);
                if d0 == 0.0 || d1 == 0.0 {
                    continue;
                }
                // depth is not linear in u on a plane; inverse depth is
                let inv = 1.0 / d0 + (1.0 / d1 - 1.0 / d0) * (ur - c0);
                assert!((1.0 / inv - d).abs() < 1e-4 * d.max(1.0), "roll {roll} px ({u},{v})");
                checked += 1;
            }
        }
        assert!(checked > 800, "{checked}");
    }
}

#[test]
fn stereo_pair_sits_on_baseline() {
    let field = plane(0.0, 0.0, 0.0);
    let rig = StereoRig::default();
    let torso = torso_pose(0.5, 0.0, 0.8, 0.4);
    let (l, r) = rig.camera_poses(&torso);
    let sep = r.translation.vector - l.translation.vector;
    assert!((sep.norm() - rig.baseline).abs() < 1e-12);
    let x_axis = l.rotation * Vector3::x();
    assert!((sep.normalize() - x_axis).norm() < 1e-9);
    let (li, ri) = render_stereo(&field, &torso, &rig).unwrap();
    assert_eq!(li.shape(), (30, 40));
    assert_eq!(ri.shape(), (30, 40));
    let mut zero = rig;
    zero.baseline = 0.0;
    let (a, b) = render_stereo(&field, &torso, &zero).unwrap();
    assert_eq!(a, b);
}

//! Torso-centric motion-prior observation.
//!
//! Flattened layout, in order: relative joint positions, joint velocities,
//! torso linear velocity, torso angular velocity, gravity direction (all in
//! the torso frame), then key-body positions (xyz each) and key-body
//! orientations (`w, x, y, z` each, `w >= 0`) relative to the torso.

use nalgebra::{Quaternion, UnitQuaternion, Vector3};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BodyState {
    pub name: String,
    /// World position, meters.
    pub position: [f64; 3],
    /// World orientation `(w, x, y, z)`.
    pub orientation: [f64; 4],
}

/// World-frame robot state needed to assemble the observation.
#[derive(Clone, Debug, PartialEq)]
pub struct RobotState {
    pub joint_positions: Vec<f64>,
    pub default_joint_positions: Vec<f64>,
    pub joint_velocities: Vec<f64>,
    pub torso_position: [f64; 3],
    /// `(w, x, y, z)`.
    pub torso_orientation: [f64; 4],
    pub linear_velocity: [f64; 3],
    pub angular_velocity: [f64; 3],
    pub bodies: Vec<BodyState>,
}

/// Which bodies enter the observation, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct AmpConfig {
    pub key_bodies: Vec<String>,
    /// World gravity direction.
    pub gravity: [f64; 3],
}

impl Default for AmpConfig {
    fn default() -> Self {
        AmpConfig {
            key_bodies: ["left_foot", "right_foot", "left_hand", "right_hand"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            gravity: [0.0, 0.0, -1.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmpObservation {
    pub joint_positions: Vec<f64>,
    pub joint_velocities: Vec<f64>,
    pub linear_velocity: [f64; 3],
    pub angular_velocity: [f64; 3],
    pub gravity: [f64; 3],
    pub body_positions: Vec<[f64; 3]>,
    pub body_orientations: Vec<[f64; 4]>,
}

impl AmpObservation {
    pub fn len(&self) -> usize {
        2 * self.joint_positions.len() + 9 + 7 * self.body_positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.joint_positions);
        out.extend_from_slice(&self.joint_velocities);
        out.extend_from_slice(&self.linear_velocity);
        out.extend_from_slice(&self.angular_velocity);
        out.extend_from_slice(&self.gravity);
        for p in &self.body_positions {
            out.extend_from_slice(p);
        }
        for q in &self.body_orientations {
            out.extend_from_slice(q);
        }
        out
    }
}

fn unit_quat(q: [f64; 4], what: &str) -> Result<UnitQuaternion<f64>> {
    let raw = Quaternion::new(q[0], q[1], q[2], q[3]);
    let n = raw.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidArgument(format!("{what}: degenerate quaternion")));
    }
    Ok(UnitQuaternion::from_quaternion(raw))
}

fn arr(v: Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}

pub fn amp_features(state: &RobotState, config: &AmpConfig) -> Result<AmpObservation> {
    let n = state.joint_positions.len();
    if state.default_joint_positions.len() != n || state.joint_velocities.len() != n {
        return Err(Error::InvalidArgument(format!(
            "joint arrays disagree: {} positions, {} defaults, {} velocities",
            n,
            state.default_joint_positions.len(),
            state.joint_velocities.len()
        )));
    }
    let torso = unit_quat(state.torso_orientation, "torso")?;
    let inv = torso.inverse();
    let torso_pos = Vector3::from(state.torso_position);

    let mut body_positions = Vec::with_capacity(config.key_bodies.len());
    let mut body_orientations = Vec::with_capacity(config.key_bodies.len());
    for name in &config.key_bodies {
        let body = state
            .bodies
            .iter()
            .find(|b| &b.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("missing key body `{name}`")))?;
        let rel = inv * (Vector3::from(body.position) - torso_pos);
        body_positions.push(arr(rel));
        let q = inv * unit_quat(body.orientation, name)?;
        let q = q.into_inner();
        let sign = if q.w < 0.0 { -1.0 } else { 1.0 };
        body_orientations.push([sign * q.w, sign * q.i, sign * q.j, sign * q.k]);
    }

    let gravity = (inv * Vector3::from(config.gravity)).normalize();
    Ok(AmpObservation {
        joint_positions: state
            .joint_positions
            .iter()
            .zip(&state.default_joint_positions)
            .map(|(q, q0)| q - q0)
            .collect(),
        joint_velocities: state.joint_velocities.clone(),
        linear_velocity: arr(inv * Vector3::from(state.linear_velocity)),
        angular_velocity: arr(inv * Vector3::from(state.angular_velocity)),
        gravity: arr(gravity),
        body_positions,
        body_orientations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(torso_q: [f64; 4]) -> RobotState {
        let names = ["left_foot", "right_foot", "left_hand", "right_hand"];
        RobotState {
            joint_positions: vec![0.1, -0.2, 0.3],
            default_joint_positions: vec![0.0, -0.1, 0.1],
            joint_velocities: vec![0.0; 3],
            torso_position: [1.0, 2.0, 0.8],
            torso_orientation: torso_q,
            linear_velocity: [0.5, 0.0, 0.0],
            angular_velocity: [0.0, 0.0, 0.2],
            bodies: names
                .iter()
                .enumerate()
                .map(|(i, n)| BodyState {
                    name: n.to_string(),
                    position: [1.0 + 0.1 * i as f64, 2.0, 0.1],
                    orientation: [1.0, 0.0, 0.0, 0.0],
                })
                .collect(),
        }
    }

    #[test]
    fn identity_orientation() {
        let obs = amp_features(&state([1.0, 0.0, 0.0, 0.0]), &AmpConfig::default()).unwrap();
        assert_eq!(obs.gravity, [0.0, 0.0, -1.0]);
        assert_eq!(obs.linear_velocity, [0.5, 0.0, 0.0]);
        let rel = &obs.joint_positions;
        assert!((rel[0] - 0.1).abs() < 1e-15 && (rel[1] + 0.1).abs() < 1e-15);
        assert_eq!(obs.joint_velocities, vec![0.0; 3]);
        assert!((obs.body_positions[0][2] + 0.7).abs() < 1e-12);
        assert_eq!(obs.body_orientations[0], [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn flattened_order_and_length() {
        let obs = amp_features(&state([1.0, 0.0, 0.0, 0.0]), &AmpConfig::default()).unwrap();
        let v = obs.to_vec();
        assert_eq!(v.len(), 3 + 3 + 3 + 3 + 3 + 4 * 3 + 4 * 4);
        assert_eq!(v.len(), obs.len());
        // gravity follows the two joint blocks and the two velocity blocks
        assert_eq!(&v[12..15], &[0.0, 0.0, -1.0]);
    }

    #[test]
    fn missing_body_is_named() {
        let mut s = state([1.0, 0.0, 0.0, 0.0]);
        s.bodies.pop();
        let err = amp_features(&s, &AmpConfig::default()).unwrap_err();
        assert!(err.to_string().contains("right_hand"));
    }

    #[test]
    fn joint_length_mismatch() {
        let mut s = state([1.0, 0.0, 0.0, 0.0]);
        s.joint_velocities.pop();
        assert!(amp_features(&s, &AmpConfig::default()).is_err());
    }
}

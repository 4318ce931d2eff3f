//! Terrain-specific reward terms and which categories use them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terrain::TerrainCategory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardId {
    VelExp,
    VelDir,
    Contact,
}

/// Reward terms active for each category.
pub fn applicable_rewards(category: TerrainCategory) -> &'static [RewardId] {
    match category {
        TerrainCategory::StairsPlatforms => &[RewardId::VelExp, RewardId::Contact],
        TerrainCategory::GapCrossing => &[RewardId::VelDir],
        TerrainCategory::Rough => &[RewardId::VelExp],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardConfig {
    /// Velocity-tracking temperature, m/s.
    pub sigma: f64,
    /// Stabilizer in the directional reward's denominator, m/s.
    pub epsilon: f64,
    /// Clip for foot-scan heights, meters.
    pub h_max: f64,
    pub weight_vel_exp: f64,
    pub weight_vel_dir: f64,
    /// Negative: the contact term is a penalty.
    pub weight_contact: f64,
}

impl Default for RewardConfig {
    fn default() -> Self {
        RewardConfig {
            sigma: 0.5,
            epsilon: 1e-3,
            h_max: 0.1,
            weight_vel_exp: 1.0,
            weight_vel_dir: 1.0,
            weight_contact: -1.0,
        }
    }
}

impl RewardConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("sigma", self.sigma), ("epsilon", self.epsilon), ("h_max", self.h_max)] {
            if !(v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn weight(&self, id: RewardId) -> f64 {
        match id {
            RewardId::VelExp => self.weight_vel_exp,
            RewardId::VelDir => self.weight_vel_dir,
            RewardId::Contact => self.weight_contact,
        }
    }
}

/// `exp(-|v_cmd - v_robot|^2 / sigma^2)`, in `(0, 1]`.
pub fn reward_vel_exp(v_cmd: [f64; 2], v_robot: [f64; 2], sigma: f64) -> f64 {
    let dx = v_cmd[0] - v_robot[0];
    let dy = v_cmd[1] - v_robot[1];
    (-(dx * dx + dy * dy) / (sigma * sigma)).exp()
}

/// `min(v_robot . d_cmd, |v_cmd|) / (|v_cmd| + epsilon)` with `d_cmd` the
/// unit command direction. Moving faster than commanded earns no more than
/// matching the command. Zero for a zero command.
pub fn reward_vel_dir(v_cmd: [f64; 2], v_robot: [f64; 2], epsilon: f64) -> f64 {
    let speed = v_cmd[0].hypot(v_cmd[1]);
    if speed == 0.0 {
        return 0.0;
    }
    let along = (v_robot[0] * v_cmd[0] + v_robot[1] * v_cmd[1]) / speed;
    along.min(speed) / (speed + epsilon)
}

/// `sum_f contact_f * std(clip(h_f, -h_max, h_max))` with population std.
pub fn reward_contact(foot_scans: &[&[f64]], contacts: &[bool], h_max: f64) -> f64 {
    foot_scans
        .iter()
        .zip(contacts)
        .filter(|(scan, &c)| c && !scan.is_empty())
        .map(|(scan, _)| {
            let n = scan.len() as f64;
            let clipped = scan.iter().map(|h| h.clamp(-h_max, h_max));
            let mean = clipped.clone().sum::<f64>() / n;
            let var = clipped.map(|h| (h - mean) * (h - mean)).sum::<f64>() / n;
            var.sqrt()
        })
        .sum()
}

/// Inputs for one environment step.
#[derive(Clone, Debug, PartialEq)]
pub struct RewardInputs<'a> {
    pub v_cmd: [f64; 2],
    pub v_robot: [f64; 2],
    pub foot_scans: &'a [&'a [f64]],
    pub contacts: &'a [bool],
}

/// Weighted sum of the terms that apply to `category`.
pub fn terrain_reward(category: TerrainCategory, inputs: &RewardInputs<'_>, config: &RewardConfig) -> f64 {
    applicable_rewards(category)
        .iter()
        .map(|&id| {
            let r = match id {
                RewardId::VelExp => reward_vel_exp(inputs.v_cmd, inputs.v_robot, config.sigma),
                RewardId::VelDir => reward_vel_dir(inputs.v_cmd, inputs.v_robot, config.epsilon),
                RewardId::Contact => reward_contact(inputs.foot_scans, inputs.contacts, config.h_max),
            };
            config.weight(id) * r
        })
        .sum()
}

//! Run configuration: a sectioned `key = value` file (a TOML subset) with
//! `SDF_<SECTION>_<KEY>` environment overrides.
//!
//! ```toml
//! [run]
//! seed = 42
//! envs = 4
//!
//! [terrain]
//! family = "stairs_up"
//! difficulty = 19
//! ```

use serde::{Deserialize, Serialize};

use crate::augment::StageToggles;
use crate::error::{Error, Result};
use crate::render::{CameraIntrinsics, MountPose, StereoRig};
use crate::terrain::{TerrainFamily, TerrainSpec};

pub const ENV_PREFIX: &str = "SDF_";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    pub envs: usize,
    pub frames: usize,
    pub output: String,
    /// Forward motion of every robot per frame, meters.
    pub speed: f64,
    /// Worker threads; 0 uses all cores.
    pub workers: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            seed: 0,
            envs: 4,
            frames: 10,
            output: "out".into(),
            speed: 0.02,
            workers: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TerrainSection {
    pub family: TerrainFamily,
    pub difficulty: u8,
    pub resolution: f64,
    pub length: f64,
    pub width: f64,
}

impl Default for TerrainSection {
    fn default() -> Self {
        Self {
            family: TerrainFamily::StairsUp,
            difficulty: 19,
            resolution: 0.05,
            length: 8.0,
            width: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RigSection {
    pub width: usize,
    pub height: usize,
    pub fx: f64,
    pub fy: f64,
    pub baseline: f64,
    pub mount_forward: f64,
    pub mount_height: f64,
    pub mount_pitch_deg: f64,
    /// Apply the startup intrinsic/extrinsic randomization per environment.
    pub randomize: bool,
}

impl Default for RigSection {
    fn default() -> Self {
        let intr = CameraIntrinsics::default();
        let mount = MountPose::default();
        Self {
            width: intr.width,
            height: intr.height,
            fx: intr.fx,
            fy: intr.fy,
            baseline: StereoRig::default().baseline,
            mount_forward: mount.position[0],
            mount_height: mount.position[2],
            mount_pitch_deg: 60.0,
            randomize: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub run: RunSection,
    pub terrain: TerrainSection,
    pub rig: RigSection,
    pub augment: StageToggles,
}

impl RunConfig {
    /// Parses a config file without environment overrides.
    pub fn parse(text: &str) -> Result<Self> {
        Self::load(text, std::iter::empty::<(String, String)>())
    }

    /// Parses `text` over the defaults, then applies `SDF_<SECTION>_<KEY>`
    /// overrides from `env`. Variables whose first segment is not a section
    /// name are ignored.
    pub fn load<I, K, V>(text: &str, env: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let file: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let mut table = toml::Table::try_from(RunConfig::default())
            .map_err(|e| Error::Config(e.to_string()))?;
        for (section, value) in file {
            match (table.get_mut(&section), value) {
                (Some(toml::Value::Table(dst)), toml::Value::Table(src)) => {
                    for (k, v) in src {
                        let coerced = match dst.get(&k) {
                            Some(existing) => coerce(existing, v),
                            None => v,
                        };
                        dst.insert(k, coerced);
                    }
                }
                (_, value) => {
                    table.insert(section, value);
                }
            }
        }
        for (name, raw) in env {
            let (name, raw) = (name.as_ref(), raw.as_ref());
            let Some(rest) = name.strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let Some((section, key)) = rest.split_once('_') else {
                continue;
            };
            let section = section.to_ascii_lowercase();
            let key = key.to_ascii_lowercase();
            let Some(toml::Value::Table(dst)) = table.get_mut(&section) else {
                continue;
            };
            let Some(existing) = dst.get(&key) else {
                return Err(Error::Config(format!("{name}: unknown key `{key}` in [{section}]")));
            };
            let value = parse_env_value(existing, raw)
                .ok_or_else(|| Error::Config(format!("{name}: cannot parse `{raw}`")))?;
            dst.insert(key, value);
        }
        let cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.run.envs == 0 {
            return Err(Error::Config("envs must be at least 1".into()));
        }
        if !(self.run.speed.is_finite() && self.run.speed >= 0.0) {
            return Err(Error::Config(format!("speed must be non-negative, got {}", self.run.speed)));
        }
        self.terrain_spec(0).validate()?;
        self.nominal_rig().validate()?;
        Ok(())
    }

    /// Terrain spec of environment `env`; the seed is derived from the master
    /// seed so rough terrains differ per environment.
    pub fn terrain_spec(&self, env: u64) -> TerrainSpec {
        TerrainSpec {
            family: self.terrain.family,
            difficulty: self.terrain.difficulty,
            cell_resolution: self.terrain.resolution,
            extent: (self.terrain.length, self.terrain.width),
            seed: self.run.seed ^ env.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        }
    }

    pub fn nominal_rig(&self) -> StereoRig {
        let r = &self.rig;
        StereoRig::new(
            CameraIntrinsics::centered(r.width, r.height, r.fx, r.fy),
            r.baseline,
            MountPose {
                position: [r.mount_forward, 0.0, r.mount_height],
                orientation: [0.0, r.mount_pitch_deg.to_radians(), 0.0],
            },
        )
    }
}

fn coerce(existing: &toml::Value, v: toml::Value) -> toml::Value {
    match (existing, v) {
        (toml::Value::Float(_), toml::Value::Integer(i)) => toml::Value::Float(i as f64),
        (_, v) => v,
    }
}

fn parse_env_value(existing: &toml::Value, raw: &str) -> Option<toml::Value> {
    let raw = raw.trim();
    Some(match existing {
        toml::Value::Integer(_) => toml::Value::Integer(raw.parse().ok()?),
        toml::Value::Float(_) => toml::Value::Float(raw.parse().ok()?),
        toml::Value::Boolean(_) => toml::Value::Boolean(match raw.to_ascii_lowercase().as_str() {
            "1" | "true" | "yes" | "on" => true,
            "0" | "false" | "no" | "off" => false,
            _ => return None,
        }),
        _ => toml::Value::String(raw.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = RunConfig::default();
        let text = cfg.to_toml_string().unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn custom_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.run.seed = 123_456_789;
        cfg.run.speed = 0.0173;
        cfg.terrain.family = TerrainFamily::Gap;
        cfg.rig.baseline = 0.0;
        cfg.rig.mount_pitch_deg = 47.25;
        cfg.augment.perlin = false;
        let text = cfg.to_toml_string().unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn partial_file_with_comments() {
        let text = "# quick run\n[run]\nseed = 7 # master\nenvs = 2\n\n[terrain]\nfamily = \"gap\"\nlength = 6\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.run.seed, 7);
        assert_eq!(cfg.run.envs, 2);
        assert_eq!(cfg.terrain.family, TerrainFamily::Gap);
        assert_eq!(cfg.terrain.length, 6.0);
        assert_eq!(cfg.rig, RigSection::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::parse("[run]\nsede = 3\n").unwrap_err();
        assert!(err.to_string().contains("sede"), "{err}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = RunConfig::parse("[run]\nseed = 3\nenvs = = 2\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn zero_envs_rejected() {
        assert!(RunConfig::parse("[run]\nenvs = 0\n").is_err());
    }

    #[test]
    fn env_overrides() {
        let env = [
            ("SDF_TERRAIN_DIFFICULTY", "4"),
            ("SDF_RIG_BASELINE", "0"),
            ("SDF_AUGMENT_PERLIN", "off"),
            ("SDF_SEED", "ignored"),
            ("HOME", "/root"),
        ];
        let cfg = RunConfig::load("", env).unwrap();
        assert_eq!(cfg.terrain.difficulty, 4);
        assert_eq!(cfg.rig.baseline, 0.0);
        assert!(!cfg.augment.perlin);
        assert!(RunConfig::load("", [("SDF_RIG_FOCAL", "3")]).is_err());
        assert!(RunConfig::load("", [("SDF_RUN_ENVS", "many")]).is_err());
    }
}

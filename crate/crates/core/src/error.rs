use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid terrain spec: {0}")]
    InvalidTerrain(String),

    #[error("terrain extent {extent} m is smaller than one feature period ({period} m)")]
    ExtentTooSmall { extent: f64, period: f64 },

    #[error("invalid camera: {0}")]
    InvalidCamera(String),

    #[error("camera at z={camera_z:.4} m is below the terrain surface ({terrain_z:.4} m)")]
    CameraBelowTerrain { camera_z: f64, terrain_z: f64 },

    #[error("image dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed {format} data: {reason}")]
    Format { format: &'static str, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

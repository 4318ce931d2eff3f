//! Procedural parkour terrain, stereo depth rendering and a realistic
//! depth-sensor augmentation pipeline, plus the small numeric kernels the
//! learning stack needs (reward terms, distillation losses, routing).
//!
//! ```
//! use sdf_core::terrain::{make_terrain, TerrainFamily, TerrainSpec};
//!
//! let field = make_terrain(&TerrainSpec::new(TerrainFamily::StairsUp, 19)).unwrap();
//! assert_eq!((field.rows(), field.cols()), (80, 160));
//! ```

pub mod augment;
pub mod colormap;
pub mod config;
pub mod engine;
pub mod error;
pub mod image;
pub mod perlin;
pub mod render;
pub mod rng;
pub mod terrain;
pub mod training;

pub use config::RunConfig;
pub use engine::{Engine, TensorDesc};
pub use error::{Error, Result};
pub use image::{DepthImage, INVALID};
pub use rng::{Purpose, RngStream};

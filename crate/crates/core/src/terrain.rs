//! Procedural parkour terrains, privileged height scans and terrain categories.
//!
//! World frame: `x` forward along the course, `y` to the left, `z` up.
//! A heightfield stores node heights row-major with rows along `y` and
//! columns along `x`; node `(row, col)` sits at
//! `origin + (col * resolution, row * resolution)`. Between nodes the surface
//! is bilinear.

use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{Purpose, RngStream};

/// Number of curriculum levels per family.
pub const DIFFICULTY_LEVELS: u8 = 20;

/// Evaluation-scale dimensions reached at the hardest level.
pub const STAIR_RISER_MAX: f64 = 0.15;
pub const STAIR_TREAD: f64 = 0.30;
pub const GAP_WIDTH_MAX: f64 = 0.45;
pub const PLATFORM_HEIGHT_MAX: f64 = 0.40;

/// Depth of a gap trench below the surrounding ground.
pub const GAP_DEPTH: f64 = 1.0;
/// Lattice spacing of the rough-terrain value noise.
pub const ROUGH_LATTICE: f64 = 0.25;
/// Fraction of the course length kept flat before the feature begins.
pub const APPROACH_FRACTION: f64 = 0.25;
/// Minimum course length for a platform (approach plus landing).
pub const PLATFORM_PERIOD: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerrainFamily {
    StairsUp,
    StairsDown,
    PlatformUp,
    PlatformDown,
    Gap,
    Rough,
}

impl TerrainFamily {
    pub const ALL: [TerrainFamily; 6] = [
        TerrainFamily::StairsUp,
        TerrainFamily::StairsDown,
        TerrainFamily::PlatformUp,
        TerrainFamily::PlatformDown,
        TerrainFamily::Gap,
        TerrainFamily::Rough,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TerrainFamily::StairsUp => "stairs_up",
            TerrainFamily::StairsDown => "stairs_down",
            TerrainFamily::PlatformUp => "platform_up",
            TerrainFamily::PlatformDown => "platform_down",
            TerrainFamily::Gap => "gap",
            TerrainFamily::Rough => "rough",
        }
    }
}

impl FromStr for TerrainFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TerrainFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidTerrain(format!("unknown terrain family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TerrainSpec {
    pub family: TerrainFamily,
    /// Curriculum level in `0..20`.
    pub difficulty: u8,
    /// Node spacing in meters.
    pub cell_resolution: f64,
    /// `(length along x, width along y)` in meters.
    pub extent: (f64, f64),
    pub seed: u64,
}

impl TerrainSpec {
    pub fn new(family: TerrainFamily, difficulty: u8) -> Self {
        Self {
            family,
            difficulty,
            cell_resolution: 0.05,
            extent: (8.0, 4.0),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.difficulty >= DIFFICULTY_LEVELS {
            return Err(Error::InvalidTerrain(format!(
                "difficulty {} outside 0..{}",
                self.difficulty, DIFFICULTY_LEVELS
            )));
        }
        if !(self.cell_resolution > 0.0) || !self.cell_resolution.is_finite() {
            return Err(Error::InvalidTerrain(format!(
                "cell resolution must be positive, got {}",
                self.cell_resolution
            )));
        }
        let (length, width) = self.extent;
        if !(length > 0.0 && width > 0.0) || !length.is_finite() || !width.is_finite() {
            return Err(Error::InvalidTerrain(format!(
                "extent must be positive, got ({length}, {width})"
            )));
        }
        Ok(())
    }

    pub fn dimensions(&self) -> FeatureDimensions {
        FeatureDimensions::at_level(self.family, self.difficulty)
    }

    /// Shortest course length that holds one full feature.
    pub fn feature_period(&self) -> f64 {
        let dims = self.dimensions();
        match self.family {
            TerrainFamily::StairsUp | TerrainFamily::StairsDown => dims.tread,
            TerrainFamily::Gap => dims.gap_width,
            TerrainFamily::PlatformUp | TerrainFamily::PlatformDown => PLATFORM_PERIOD,
            TerrainFamily::Rough => ROUGH_LATTICE,
        }
    }

    /// `(rows, cols)` of the generated grid.
    pub fn grid_shape(&self) -> (usize, usize) {
        let rows = (self.extent.1 / self.cell_resolution).round() as usize;
        let cols = (self.extent.0 / self.cell_resolution).round() as usize;
        (rows, cols)
    }

    /// Where along `x` the feature starts.
    pub fn feature_start(&self) -> f64 {
        self.extent.0 * APPROACH_FRACTION
    }
}

/// Linear curriculum scaling: 10% of the final value at level 0, the full
/// value at level 19.
pub fn level_fraction(difficulty: u8) -> f64 {
    let top = (DIFFICULTY_LEVELS - 1) as f64;
    0.1 + 0.9 * (difficulty.min(DIFFICULTY_LEVELS - 1) as f64 / top)
}

/// Continuous geometry parameters of a family at a given level. Fields that
/// do not apply to the family are zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureDimensions {
    pub riser: f64,
    pub tread: f64,
    pub gap_width: f64,
    pub slab_height: f64,
    pub rough_amplitude: f64,
}

impl FeatureDimensions {
    pub fn at_level(family: TerrainFamily, difficulty: u8) -> Self {
        let f = level_fraction(difficulty);
        let mut dims = FeatureDimensions {
            riser: 0.0,
            tread: 0.0,
            gap_width: 0.0,
            slab_height: 0.0,
            rough_amplitude: 0.0,
        };
        match family {
            TerrainFamily::StairsUp | TerrainFamily::StairsDown => {
                dims.riser = STAIR_RISER_MAX * f;
                dims.tread = STAIR_TREAD;
            }
            TerrainFamily::Gap => dims.gap_width = GAP_WIDTH_MAX * f,
            TerrainFamily::PlatformUp | TerrainFamily::PlatformDown => {
                dims.slab_height = PLATFORM_HEIGHT_MAX * f
            }
            TerrainFamily::Rough => dims.rough_amplitude = 0.01 + difficulty as f64 * 0.01,
        }
        dims
    }

    /// The single dimension the curriculum scales for this family.
    pub fn characteristic(&self, family: TerrainFamily) -> f64 {
        match family {
            TerrainFamily::StairsUp | TerrainFamily::StairsDown => self.riser,
            TerrainFamily::Gap => self.gap_width,
            TerrainFamily::PlatformUp | TerrainFamily::PlatformDown => self.slab_height,
            TerrainFamily::Rough => self.rough_amplitude,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Heightfield {
    origin: (f32, f32),
    resolution: f32,
    rows: usize,
    cols: usize,
    heights: Vec<f32>,
    min_height: f32,
    max_height: f32,
    /// Largest `|dh/dx|` and `|dh/dy|` of the bilinear surface.
    max_slope: (f64, f64),
}

impl Heightfield {
    pub fn new(
        origin: (f32, f32),
        resolution: f32,
        rows: usize,
        cols: usize,
        heights: Vec<f32>,
    ) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(Error::InvalidTerrain(format!(
                "grid must be at least 2x2, got {rows}x{cols}"
            )));
        }
        if !(resolution > 0.0) || !resolution.is_finite() {
            return Err(Error::InvalidTerrain(format!(
                "resolution must be positive, got {resolution}"
            )));
        }
        if heights.len() != rows * cols {
            return Err(Error::InvalidTerrain(format!(
                "{} heights for a {rows}x{cols} grid",
                heights.len()
            )));
        }
        if heights.iter().any(|h| !h.is_finite()) {
            return Err(Error::InvalidTerrain("non-finite height".into()));
        }
        let (min_height, max_height) = heights
            .iter()
            .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &h| {
                (lo.min(h), hi.max(h))
            });
        let mut max_slope = (0.0f64, 0.0f64);
        for r in 0..rows {
            for c in 0..cols {
                let h = heights[r * cols + c] as f64;
                if c + 1 < cols {
                    max_slope.0 = max_slope.0.max((heights[r * cols + c + 1] as f64 - h).abs());
                }
                if r + 1 < rows {
                    max_slope.1 = max_slope.1.max((heights[(r + 1) * cols + c] as f64 - h).abs());
                }
            }
        }
        let inv = 1.0 / resolution as f64;
        let max_slope = (max_slope.0 * inv, max_slope.1 * inv);
        Ok(Self {
            origin,
            resolution,
            rows,
            cols,
            heights,
            min_height,
            max_height,
            max_slope,
        })
    }

    /// A flat field of constant height centered laterally on `y = 0`.
    pub fn flat(length: f64, width: f64, resolution: f64, height: f32) -> Result<Self> {
        let rows = (width / resolution).round() as usize;
        let cols = (length / resolution).round() as usize;
        Heightfield::new(
            (0.0, (-width / 2.0) as f32),
            resolution as f32,
            rows,
            cols,
            vec![height; rows * cols],
        )
    }

    pub fn origin(&self) -> (f32, f32) {
        self.origin
    }
    pub fn resolution(&self) -> f32 {
        self.resolution
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn heights(&self) -> &[f32] {
        &self.heights
    }
    pub fn min_height(&self) -> f32 {
        self.min_height
    }
    pub fn max_height(&self) -> f32 {
        self.max_height
    }

    /// Bounds on the surface gradient along x and y, per meter.
    pub fn max_slope(&self) -> (f64, f64) {
        self.max_slope
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f32 {
        self.heights[row * self.cols + col]
    }

    /// World-space coordinates of node `(row, col)`.
    pub fn node_position(&self, row: usize, col: usize) -> (f64, f64) {
        let res = self.resolution as f64;
        (
            self.origin.0 as f64 + col as f64 * res,
            self.origin.1 as f64 + row as f64 * res,
        )
    }

    /// `(x_min, x_max, y_min, y_max)` covered by the nodes.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let (x0, y0) = (self.origin.0 as f64, self.origin.1 as f64);
        let res = self.resolution as f64;
        (
            x0,
            x0 + (self.cols - 1) as f64 * res,
            y0,
            y0 + (self.rows - 1) as f64 * res,
        )
    }

    #[inline]
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let gx = (x - self.origin.0 as f64) / self.resolution as f64;
        let gy = (y - self.origin.1 as f64) / self.resolution as f64;
        gx >= 0.0 && gy >= 0.0 && gx <= (self.cols - 1) as f64 && gy <= (self.rows - 1) as f64
    }

    /// Bilinear height at `(x, y)`, clamped to the edge nodes outside the grid.
    #[inline]
    pub fn height_at(&self, x: f64, y: f64) -> f64 {
        let inv = 1.0 / self.resolution as f64;
        let gx = ((x - self.origin.0 as f64) * inv).clamp(0.0, (self.cols - 1) as f64);
        let gy = ((y - self.origin.1 as f64) * inv).clamp(0.0, (self.rows - 1) as f64);
        self.bilinear(gx, gy)
    }

    /// Bilinear interpolation at fractional grid coordinates already clamped
    /// to the grid.
    #[inline]
    pub(crate) fn bilinear(&self, gx: f64, gy: f64) -> f64 {
        let c0 = (gx.floor() as usize).min(self.cols - 2);
        let r0 = (gy.floor() as usize).min(self.rows - 2);
        let fx = gx - c0 as f64;
        let fy = gy - r0 as f64;
        let i = r0 * self.cols + c0;
        let h00 = self.heights[i] as f64;
        let h01 = self.heights[i + 1] as f64;
        let h10 = self.heights[i + self.cols] as f64;
        let h11 = self.heights[i + self.cols + 1] as f64;
        let top = h00 + (h01 - h00) * fx;
        let bottom = h10 + (h11 - h10) * fx;
        top + (bottom - top) * fy
    }

    /// Little-endian `HFLD` binary: magic, `u32 rows`, `u32 cols`,
    /// `f32 resolution`, `f32 origin_x`, `f32 origin_y`, then `rows * cols`
    /// `f32` heights row-major.
    pub fn write_hfld<W: Write>(&self, mut out: W) -> Result<()> {
        let mut buf = Vec::with_capacity(24 + self.heights.len() * 4);
        buf.extend_from_slice(b"HFLD");
        buf.extend_from_slice(&(self.rows as u32).to_le_bytes());
        buf.extend_from_slice(&(self.cols as u32).to_le_bytes());
        buf.extend_from_slice(&self.resolution.to_le_bytes());
        buf.extend_from_slice(&self.origin.0.to_le_bytes());
        buf.extend_from_slice(&self.origin.1.to_le_bytes());
        for h in &self.heights {
            buf.extend_from_slice(&h.to_le_bytes());
        }
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn read_hfld<R: Read>(mut input: R) -> Result<Self> {
        let mut header = [0u8; 24];
        input.read_exact(&mut header)?;
        if &header[..4] != b"HFLD" {
            return Err(Error::Format {
                format: "HFLD",
                reason: "bad magic".into(),
            });
        }
        let word = |k: usize| [header[k], header[k + 1], header[k + 2], header[k + 3]];
        let rows = u32::from_le_bytes(word(4)) as usize;
        let cols = u32::from_le_bytes(word(8)) as usize;
        let resolution = f32::from_le_bytes(word(12));
        let origin = (f32::from_le_bytes(word(16)), f32::from_le_bytes(word(20)));
        let mut raw = vec![0u8; rows * cols * 4];
        input.read_exact(&mut raw).map_err(|e| Error::Format {
            format: "HFLD",
            reason: format!("truncated height payload: {e}"),
        })?;
        let heights = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Heightfield::new(origin, resolution, rows, cols, heights)
    }

    /// 16-bit PGM (big-endian samples as PGM requires). A header comment
    /// records the affine mapping `height = offset + sample * scale`.
    pub fn write_pgm16<W: Write>(&self, mut out: W) -> Result<()> {
        let offset = self.min_height as f64;
        let span = (self.max_height - self.min_height) as f64;
        let scale = if span > 0.0 { span / 65535.0 } else { 1.0 };
        write!(
            out,
            "P5\n# height = offset + sample * scale; offset={offset} scale={scale}\n{} {}\n65535\n",
            self.cols, self.rows
        )?;
        let mut buf = Vec::with_capacity(self.heights.len() * 2);
        for &h in &self.heights {
            let s = ((h as f64 - offset) / scale).round().clamp(0.0, 65535.0) as u16;
            buf.extend_from_slice(&s.to_be_bytes());
        }
        out.write_all(&buf)?;
        Ok(())
    }
}

/// Generates the heightfield for `spec`. Pure: the same spec (including seed)
/// always yields a bit-identical grid.
pub fn make_terrain(spec: &TerrainSpec) -> Result<Heightfield> {
    spec.validate()?;
    let period = spec.feature_period();
    let (length, width) = spec.extent;
    if length < period {
        return Err(Error::ExtentTooSmall {
            extent: length,
            period,
        });
    }
    let (rows, cols) = spec.grid_shape();
    if rows < 2 || cols < 2 {
        return Err(Error::ExtentTooSmall {
            extent: length.min(width),
            period: 2.0 * spec.cell_resolution,
        });
    }

    let res = spec.cell_resolution;
    let dims = spec.dimensions();
    let start = spec.feature_start();
    // Node positions are integer multiples of the resolution; the epsilon
    // keeps a boundary that lands exactly on a node from flipping sides.
    const EDGE_EPS: f64 = 1e-9;

    let column_profile: Vec<f64> = match spec.family {
        TerrainFamily::StairsUp | TerrainFamily::StairsDown => {
            let sign = if spec.family == TerrainFamily::StairsUp { 1.0 } else { -1.0 };
            (0..cols)
                .map(|c| {
                    let x = c as f64 * res;
                    if x + EDGE_EPS < start {
                        0.0
                    } else {
                        let step = ((x - start) / dims.tread + EDGE_EPS).floor();
                        sign * dims.riser * (step + 1.0)
                    }
                })
                .collect()
        }
        TerrainFamily::Gap => (0..cols)
            .map(|c| {
                let x = c as f64 * res;
                if x + EDGE_EPS >= start && x + EDGE_EPS < start + dims.gap_width {
                    -GAP_DEPTH
                } else {
                    0.0
                }
            })
            .collect(),
        TerrainFamily::PlatformUp | TerrainFamily::PlatformDown => (0..cols)
            .map(|c| {
                let x = c as f64 * res;
                let on_slab = x + EDGE_EPS >= start;
                let raised = if spec.family == TerrainFamily::PlatformUp {
                    on_slab
                } else {
                    !on_slab
                };
                if raised {
                    dims.slab_height
                } else {
                    0.0
                }
            })
            .collect(),
        TerrainFamily::Rough => Vec::new(),
    };

    let heights = if spec.family == TerrainFamily::Rough {
        rough_relief(spec, rows, cols, dims.rough_amplitude)
    } else {
        let mut h = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            h.extend(column_profile.iter().map(|&v| v as f32));
        }
        h
    };

    Heightfield::new((0.0, (-width / 2.0) as f32), res as f32, rows, cols, heights)
}

/// Value noise on a coarse lattice, bilinearly upsampled, then one 3x3 box
/// pass. Every stage is a convex combination, so `|h| <= amplitude`.
fn rough_relief(spec: &TerrainSpec, rows: usize, cols: usize, amplitude: f64) -> Vec<f32> {
    let res = spec.cell_resolution;
    let lat_cols = ((cols - 1) as f64 * res / ROUGH_LATTICE).ceil() as usize + 2;
    let lat_rows = ((rows - 1) as f64 * res / ROUGH_LATTICE).ceil() as usize + 2;
    let mut draws = RngStream::new(spec.seed, 0).draws(Purpose::Terrain);
    let lattice: Vec<f64> = (0..lat_rows * lat_cols)
        .map(|_| draws.uniform(-amplitude, amplitude))
        .collect();

    let mut raw = vec![0.0f64; rows * cols];
    for r in 0..rows {
        let ly = r as f64 * res / ROUGH_LATTICE;
        let (ly0, fy) = (ly.floor() as usize, ly.fract());
        for c in 0..cols {
            let lx = c as f64 * res / ROUGH_LATTICE;
            let (lx0, fx) = (lx.floor() as usize, lx.fract());
            let at = |rr: usize, cc: usize| lattice[rr * lat_cols + cc];
            let top = at(ly0, lx0) * (1.0 - fx) + at(ly0, lx0 + 1) * fx;
            let bottom = at(ly0 + 1, lx0) * (1.0 - fx) + at(ly0 + 1, lx0 + 1) * fx;
            raw[r * cols + c] = top * (1.0 - fy) + bottom * fy;
        }
    }

    let mut out = vec![0.0f32; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let mut sum = 0.0;
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    let rr = (r as i64 + dr).clamp(0, rows as i64 - 1) as usize;
                    let cc = (c as i64 + dc).clamp(0, cols as i64 - 1) as usize;
                    sum += raw[rr * cols + cc];
                }
            }
            out[r * cols + c] = (sum / 9.0) as f32;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Height scan
// ---------------------------------------------------------------------------

/// Samples along the robot's forward axis.
pub const SCAN_FORWARD: usize = 33;
/// Samples across, left to right.
pub const SCAN_LATERAL: usize = 21;
pub const SCAN_SAMPLES: usize = SCAN_FORWARD * SCAN_LATERAL;
pub const SCAN_RESOLUTION: f64 = 0.05;
/// Window reach ahead of and behind the base.
pub const SCAN_AHEAD: f64 = 1.2;
pub const SCAN_BEHIND: f64 = 0.4;
pub const SCAN_HALF_WIDTH: f64 = 0.5;

/// Planar base pose used for scanning: position, heading and base height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasePose {
    pub x: f64,
    pub y: f64,
    pub yaw: f64,
    pub z: f64,
}

impl BasePose {
    pub fn new(x: f64, y: f64, yaw: f64, z: f64) -> Self {
        Self { x, y, yaw, z }
    }
}

/// Base-frame offset of scan sample `(i, j)`: `i` runs rear to front
/// (`x = -0.4 .. 1.2` m), `j` runs left to right (`y = +0.5 .. -0.5` m).
pub fn scan_offset(i: usize, j: usize) -> (f64, f64) {
    (
        -SCAN_BEHIND + i as f64 * SCAN_RESOLUTION,
        SCAN_HALF_WIDTH - j as f64 * SCAN_RESOLUTION,
    )
}

/// 1.6 m x 1.0 m ego-centric grid of terrain heights relative to the base,
/// stored forward-major: index `i * SCAN_LATERAL + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightScan {
    pub values: Vec<f32>,
    /// `false` where the sample point fell outside the field and was clamped.
    pub valid: Vec<bool>,
}

impl HeightScan {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f32 {
        self.values[i * SCAN_LATERAL + j]
    }

    pub fn all_valid(&self) -> bool {
        self.valid.iter().all(|&v| v)
    }
}

pub fn height_scan(field: &Heightfield, pose: BasePose) -> HeightScan {
    let (sin, cos) = pose.yaw.sin_cos();
    let mut values = Vec::with_capacity(SCAN_SAMPLES);
    let mut valid = Vec::with_capacity(SCAN_SAMPLES);
    for i in 0..SCAN_FORWARD {
        for j in 0..SCAN_LATERAL {
            let (dx, dy) = scan_offset(i, j);
            let x = pose.x + cos * dx - sin * dy;
            let y = pose.y + sin * dx + cos * dy;
            valid.push(field.contains(x, y));
            values.push((field.height_at(x, y) - pose.z) as f32);
        }
    }
    HeightScan { values, valid }
}

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

/// Critic / discriminator category. Discriminants are the 1-based labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TerrainCategory {
    StairsPlatforms = 1,
    GapCrossing = 2,
    Rough = 3,
}

impl TerrainCategory {
    pub const ALL: [TerrainCategory; 3] = [
        TerrainCategory::StairsPlatforms,
        TerrainCategory::GapCrossing,
        TerrainCategory::Rough,
    ];

    pub fn label(self) -> u8 {
        self as u8
    }

    /// Zero-based head index.
    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            1 => Ok(TerrainCategory::StairsPlatforms),
            2 => Ok(TerrainCategory::GapCrossing),
            3 => Ok(TerrainCategory::Rough),
            _ => Err(Error::InvalidArgument(format!(
                "terrain category label {label} outside 1..=3"
            ))),
        }
    }
}

pub fn terrain_category(family: TerrainFamily) -> TerrainCategory {
    match family {
        TerrainFamily::StairsUp
        | TerrainFamily::StairsDown
        | TerrainFamily::PlatformUp
        | TerrainFamily::PlatformDown => TerrainCategory::StairsPlatforms,
        TerrainFamily::Gap => TerrainCategory::GapCrossing,
        TerrainFamily::Rough => TerrainCategory::Rough,
    }
}

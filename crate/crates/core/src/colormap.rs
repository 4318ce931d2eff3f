//! Cool-to-warm depth color ramp for visual inspection.
//!
//! Five fixed stops over `[0, 2]` m, linearly interpolated per channel and
//! rounded to the nearest integer. Near surfaces are purple/blue, far ones
//! orange/yellow. Invalid pixels are black.
//!
//! | depth (m) | RGB            |
//! |-----------|----------------|
//! | 0.0       | (48, 18, 59)   |
//! | 0.5       | (40, 110, 220) |
//! | 1.0       | (30, 200, 140) |
//! | 1.5       | (240, 110, 30) |
//! | 2.0       | (250, 230, 40) |

use std::io::Write;

use crate::error::Result;
use crate::image::{DepthImage, INVALID};

pub const RAMP_MAX_DEPTH: f32 = 2.0;

pub const RAMP_STOPS: [[u8; 3]; 5] = [
    [48, 18, 59],
    [40, 110, 220],
    [30, 200, 140],
    [240, 110, 30],
    [250, 230, 40],
];

/// Color for a position `t` in `[0, 1]` along the ramp (clamped).
pub fn ramp(t: f32) -> [u8; 3] {
    let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
    let pos = t * (RAMP_STOPS.len() - 1) as f32;
    let i = (pos.floor() as usize).min(RAMP_STOPS.len() - 2);
    let f = pos - i as f32;
    let (a, b) = (RAMP_STOPS[i], RAMP_STOPS[i + 1]);
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = (a[c] as f32 + (b[c] as f32 - a[c] as f32) * f).round() as u8;
    }
    out
}

/// Color for a metric depth over `[0, 2]` m.
pub fn depth_color(depth: f32) -> [u8; 3] {
    if depth == INVALID {
        return [0, 0, 0];
    }
    ramp(depth / RAMP_MAX_DEPTH)
}

/// Writes a binary PPM. `normalized = true` treats values as already in
/// `[0, 1]` (post clip-and-normalize), where 0.0 also renders as black.
pub fn write_ppm<W: Write>(img: &DepthImage, normalized: bool, mut out: W) -> Result<()> {
    write!(out, "P6\n{} {}\n255\n", img.width(), img.height())?;
    let mut bytes = Vec::with_capacity(img.data().len() * 3);
    for &v in img.data() {
        let rgb = if normalized {
            if v == INVALID {
                [0, 0, 0]
            } else {
                ramp(v)
            }
        } else {
            depth_color(v)
        };
        bytes.extend_from_slice(&rgb);
    }
    out.write_all(&bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stops_are_hit_exactly() {
        assert_eq!(depth_color(0.5), RAMP_STOPS[1]);
        assert_eq!(depth_color(1.0), RAMP_STOPS[2]);
        assert_eq!(depth_color(2.0), RAMP_STOPS[4]);
        assert_eq!(depth_color(9.0), RAMP_STOPS[4]);
    }

    #[test]
    fn invalid_is_black() {
        assert_eq!(depth_color(0.0), [0, 0, 0]);
    }

    #[test]
    fn midway_between_stops() {
        assert_eq!(ramp(0.125), [44, 64, 140]);
    }
}

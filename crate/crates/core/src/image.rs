//! Metric depth images and their on-disk formats.
//!
//! * PFM: `Pf\n{w} {h}\n-1.0\n` followed by little-endian `f32` rows stored
//!   bottom-to-top, as the PFM convention requires. Lossless.
//! * 8-bit PGM: `byte = round(clamp(d / 2.0, 0, 1) * 255)`, i.e. 127.5 levels
//!   per meter over `[0, 2]` m. Invalid pixels are 0.
//! * PPM color map: see [`crate::colormap`].

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};

/// Depth value marking a failed measurement.
pub const INVALID: f32 = 0.0;

/// Scale of the 8-bit PGM export, in levels per meter.
pub const PGM8_LEVELS_PER_METER: f32 = 127.5;

/// Row-major grid of z-depth values in meters. `0.0` is the invalid sentinel;
/// every other value is finite and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthImage {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl DepthImage {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            data: vec![INVALID; width * height],
        }
    }

    pub fn filled(width: usize, height: usize, value: f32) -> Self {
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "{} values for a {width}x{height} image",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    /// `(height, width)`, i.e. rows then columns.
    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f32 {
        self.data[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f32) {
        self.data[row * self.width + col] = value;
    }

    #[inline]
    pub fn is_valid_at(&self, row: usize, col: usize) -> bool {
        self.get(row, col) != INVALID
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f32> {
        self.data
    }

    pub fn row(&self, row: usize) -> &[f32] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn invalid_count(&self) -> usize {
        self.data.iter().filter(|&&d| d == INVALID).count()
    }

    pub fn invalid_fraction(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.invalid_count() as f64 / self.data.len() as f64
    }

    /// Applies `f` to every valid pixel, leaving holes untouched.
    pub fn map_valid(&self, mut f: impl FnMut(usize, f32) -> f32) -> DepthImage {
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, &d)| if d == INVALID { INVALID } else { f(i, d) })
            .collect();
        DepthImage {
            width: self.width,
            height: self.height,
            data,
        }
    }

    pub fn write_pfm<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "Pf\n{} {}\n-1.0\n", self.width, self.height)?;
        let mut buf = Vec::with_capacity(self.data.len() * 4);
        for row in (0..self.height).rev() {
            for &v in self.row(row) {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn read_pfm<R: Read>(input: R) -> Result<Self> {
        let mut reader = BufReader::new(input);
        let bad = |reason: &str| Error::Format {
            format: "PFM",
            reason: reason.to_string(),
        };
        let magic = read_token_line(&mut reader)?;
        if magic != "Pf" {
            return Err(bad("expected single-channel `Pf` magic"));
        }
        let dims = read_token_line(&mut reader)?;
        let mut it = dims.split_whitespace();
        let width: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("width"))?;
        let height: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("height"))?;
        let scale: f32 = read_token_line(&mut reader)?
            .parse()
            .map_err(|_| bad("scale"))?;
        let little_endian = scale < 0.0;
        let mut raw = vec![0u8; width * height * 4];
        reader.read_exact(&mut raw)?;
        let mut data = vec![0.0f32; width * height];
        for (k, chunk) in raw.chunks_exact(4).enumerate() {
            let bytes = [chunk[0], chunk[1], chunk[2], chunk[3]];
            let v = if little_endian {
                f32::from_le_bytes(bytes)
            } else {
                f32::from_be_bytes(bytes)
            };
            let (file_row, col) = (k / width, k % width);
            data[(height - 1 - file_row) * width + col] = v;
        }
        DepthImage::from_vec(width, height, data)
    }

    /// 8-bit greyscale preview, see the module docs for the scaling.
    pub fn write_pgm8<W: Write>(&self, mut out: W) -> Result<()> {
        write!(
            out,
            "P5\n# depth scale {PGM8_LEVELS_PER_METER} levels/m, 0 = invalid\n{} {}\n255\n",
            self.width, self.height
        )?;
        let bytes: Vec<u8> = self
            .data
            .iter()
            .map(|&d| ((d / 2.0).clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect();
        out.write_all(&bytes)?;
        Ok(())
    }
}

fn read_token_line<R: BufRead>(reader: &mut R) -> Result<String> {
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Err(Error::Format {
                format: "PFM",
                reason: "unexpected end of header".into(),
            });
        }
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            return Ok(t.to_string());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pfm_round_trip_is_lossless() {
        let data: Vec<f32> = (0..12).map(|i| i as f32 * 0.37 + 0.001).collect();
        let img = DepthImage::from_vec(4, 3, data).unwrap();
        let mut buf = Vec::new();
        img.write_pfm(&mut buf).unwrap();
        assert!(buf.starts_with(b"Pf\n4 3\n-1.0\n"));
        let back = DepthImage::read_pfm(&buf[..]).unwrap();
        assert_eq!(back, img);
    }

    #[test]
    fn pfm_stores_bottom_row_first() {
        let img = DepthImage::from_vec(1, 2, vec![1.0, 2.0]).unwrap();
        let mut buf = Vec::new();
        img.write_pfm(&mut buf).unwrap();
        let payload = &buf[buf.len() - 8..];
        assert_eq!(&payload[..4], &2.0f32.to_le_bytes());
    }

    #[test]
    fn pgm8_scaling() {
        let img = DepthImage::from_vec(3, 1, vec![0.0, 1.0, 5.0]).unwrap();
        let mut buf = Vec::new();
        img.write_pgm8(&mut buf).unwrap();
        assert_eq!(&buf[buf.len() - 3..], &[0, 128, 255]);
    }

    #[test]
    fn from_vec_rejects_wrong_length() {
        assert!(DepthImage::from_vec(2, 2, vec![1.0; 3]).is_err());
    }
}

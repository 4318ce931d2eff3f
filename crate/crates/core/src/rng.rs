//! Counter-based random streams.
//!
//! Every draw is a pure function of `(master_seed, env_id, purpose, frame,
//! draw_index)`. Nothing is carried between draws except the counter, so two
//! environments can be processed in any order (or on any thread) and still
//! produce identical values.

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// What a block of draws is used for. Distinct purposes never share draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u32)]
pub enum Purpose {
    Terrain = 1,
    Rig = 2,
    Startup = 3,
    FrameParams = 4,
    Gaussian = 5,
    Perlin = 6,
    Failures = 7,
}

impl Purpose {
    /// Startup purposes are sampled once per environment lifetime and ignore
    /// the frame counter.
    pub fn is_per_frame(self) -> bool {
        matches!(
            self,
            Purpose::FrameParams | Purpose::Gaussian | Purpose::Perlin | Purpose::Failures
        )
    }
}

/// Per-environment stream identity plus the current frame counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub master_seed: u64,
    pub env_id: u64,
    pub frame: u64,
    midpoint: bool,
}

impl RngStream {
    pub fn new(master_seed: u64, env_id: u64) -> Self {
        Self {
            master_seed,
            env_id,
            frame: 0,
            midpoint: false,
        }
    }

    /// A stream whose uniform draws all land on the midpoint of their range
    /// and whose normal draws are all zero. Used to pin randomization to the
    /// nominal configuration.
    pub fn midpoint() -> Self {
        Self {
            master_seed: 0,
            env_id: 0,
            frame: 0,
            midpoint: true,
        }
    }

    pub fn is_midpoint(&self) -> bool {
        self.midpoint
    }

    pub fn with_frame(mut self, frame: u64) -> Self {
        self.frame = frame;
        self
    }

    pub fn advance_frame(&mut self) {
        self.frame += 1;
    }

    /// Draws for `purpose`. Per-frame purposes are keyed by the current frame.
    pub fn draws(&self, purpose: Purpose) -> Draws {
        let frame = if purpose.is_per_frame() { self.frame } else { u64::MAX };
        let mut key = mix64(self.master_seed ^ GOLDEN);
        key = mix64(key ^ self.env_id.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        key = mix64(key ^ (purpose as u64).wrapping_mul(0xA076_1D64_78BD_642F));
        key = mix64(key ^ frame.wrapping_mul(0xE703_7ED1_A0B4_28DB));
        Draws {
            key,
            counter: 0,
            midpoint: self.midpoint,
        }
    }
}

/// A sequence of draws under one key. `counter` is the draw index.
#[derive(Clone, Debug)]
pub struct Draws {
    key: u64,
    counter: u64,
    midpoint: bool,
}

impl Draws {
    /// Jump to an absolute draw index.
    pub fn seek(&mut self, index: u64) {
        self.counter = index;
    }

    /// Independent sub-sequence, e.g. one per pixel.
    pub fn fork(&self, index: u64) -> Draws {
        Draws {
            key: mix64(self.key ^ mix64(index.wrapping_add(GOLDEN))),
            counter: 0,
            midpoint: self.midpoint,
        }
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`; the midpoint stream returns `(lo + hi) / 2` exactly.
    #[inline]
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let center = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        center + half * (2.0 * self.unit() - 1.0)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn uniform_int(&mut self, lo: u32, hi: u32) -> u32 {
        let span = (hi - lo + 1) as f64;
        let k = (self.unit() * span) as u32;
        lo + k.min(hi - lo)
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        if self.midpoint {
            return 0.0;
        }
        StandardNormal.sample(self)
    }
}

impl RngCore for Draws {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        if self.midpoint {
            return 1 << 63;
        }
        let out = mix64(self.key ^ self.counter.wrapping_mul(GOLDEN));
        self.counter = self.counter.wrapping_add(1);
        out
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

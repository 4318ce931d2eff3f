//! Multi-octave gradient (Perlin) noise over an image grid.
//!
//! `n(u, v) = sum_{o=0}^{4} 0.5^o * P_o(2^o x, 2^o y)` where
//! `(x, y) = (u, v) * BASE_CELLS / width` plus a random lattice offset, and
//! each octave `P_o` has its own permutation table. Gradients are unit
//! vectors, which keeps `|P_o| <= sqrt(2)/2 < 1`, so the sum stays inside
//! `[-AMPLITUDE_BOUND, AMPLITUDE_BOUND]`.

use rand::seq::SliceRandom;

use crate::rng::Draws;

pub const OCTAVES: usize = 5;
pub const PERSISTENCE: f64 = 0.5;
/// Lattice cells across the image width at octave 0.
pub const BASE_CELLS: f64 = 4.0;
/// `sum_{o<5} 0.5^o`.
pub const AMPLITUDE_BOUND: f64 = 1.9375;
/// Bound on `|dP/dx|` and `|dP/dy|` of a single octave in lattice units.
/// The maximum over all corner-gradient combinations is about 2.003.
pub const OCTAVE_SLOPE_BOUND: f64 = 2.05;

/// Largest possible difference between adjacent samples of a field `width`
/// pixels wide. Every octave contributes `0.5^o * 2^o = 1` times the
/// lattice spacing per pixel.
pub fn neighbor_step_bound(width: usize) -> f64 {
    OCTAVES as f64 * BASE_CELLS / width.max(1) as f64 * OCTAVE_SLOPE_BOUND
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const GRADIENTS: [(f64, f64); 8] = [
    (1.0, 0.0),
    (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
    (0.0, 1.0),
    (-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
    (-1.0, 0.0),
    (-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
    (0.0, -1.0),
    (FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
];

/// One octave of classic 2-D gradient noise with a 256-entry permutation.
#[derive(Clone, Debug)]
pub struct GradientLattice {
    perm: [u8; 512],
}

impl GradientLattice {
    pub fn new(draws: &mut Draws) -> Self {
        let mut base: Vec<u8> = (0..=255).collect();
        base.shuffle(draws);
        let mut perm = [0u8; 512];
        for i in 0..512 {
            perm[i] = base[i & 255];
        }
        Self { perm }
    }

    #[inline]
    fn gradient(&self, xi: i64, yi: i64) -> (f64, f64) {
        let h = self.perm[self.perm[(xi & 255) as usize] as usize + (yi & 255) as usize];
        GRADIENTS[(h & 7) as usize]
    }

    /// Noise value at `(x, y)`; zero on lattice points, magnitude below 1.
    pub fn sample(&self, x: f64, y: f64) -> f64 {
        let (x0, y0) = (x.floor(), y.floor());
        let (fx, fy) = (x - x0, y - y0);
        let (xi, yi) = (x0 as i64, y0 as i64);
        let dot = |gx: i64, gy: i64, dx: f64, dy: f64| {
            let g = self.gradient(gx, gy);
            g.0 * dx + g.1 * dy
        };
        let n00 = dot(xi, yi, fx, fy);
        let n10 = dot(xi + 1, yi, fx - 1.0, fy);
        let n01 = dot(xi, yi + 1, fx, fy - 1.0);
        let n11 = dot(xi + 1, yi + 1, fx - 1.0, fy - 1.0);
        let (sx, sy) = (fade(fx), fade(fy));
        let a = n00 + (n10 - n00) * sx;
        let b = n01 + (n11 - n01) * sx;
        a + (b - a) * sy
    }
}

#[inline]
fn fade(t: f64) -> f64 {
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

/// A sampled noise field matching an image's dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct PerlinField {
    width: usize,
    height: usize,
    values: Vec<f32>,
}

impl PerlinField {
    /// Draws fresh per-octave permutations and offsets from `draws`.
    pub fn generate(width: usize, height: usize, draws: &mut Draws) -> Self {
        let lattices: Vec<GradientLattice> =
            (0..OCTAVES).map(|_| GradientLattice::new(draws)).collect();
        let offsets: Vec<(f64, f64)> = (0..OCTAVES)
            .map(|_| (draws.uniform(0.0, 256.0), draws.uniform(0.0, 256.0)))
            .collect();
        let scale = BASE_CELLS / width.max(1) as f64;
        let mut values = Vec::with_capacity(width * height);
        for v in 0..height {
            for u in 0..width {
                let (x, y) = (u as f64 * scale, v as f64 * scale);
                let mut sum = 0.0;
                let mut amp = 1.0;
                let mut freq = 1.0;
                for (lat, off) in lattices.iter().zip(&offsets) {
                    sum += amp * lat.sample(freq * x + off.0, freq * y + off.1);
                    amp *= PERSISTENCE;
                    freq *= 2.0;
                }
                values.push(sum as f32);
            }
        }
        Self {
            width,
            height,
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }
    pub fn height(&self) -> usize {
        self.height
    }
    pub fn values(&self) -> &[f32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f32 {
        self.values[row * self.width + col]
    }

    /// Largest absolute difference between horizontally or vertically
    /// adjacent samples.
    pub fn max_neighbor_step(&self) -> f32 {
        let mut m = 0.0f32;
        for r in 0..self.height {
            for c in 0..self.width {
                let v = self.get(r, c);
                if c + 1 < self.width {
                    m = m.max((self.get(r, c + 1) - v).abs());
                }
                if r + 1 < self.height {
                    m = m.max((self.get(r + 1, c) - v).abs());
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Purpose, RngStream};

    #[test]
    fn zero_on_lattice_points() {
        let lat = GradientLattice::new(&mut RngStream::new(1, 0).draws(Purpose::Perlin));
        for x in -3..3 {
            for y in -3..3 {
                assert_eq!(lat.sample(x as f64, y as f64), 0.0);
            }
        }
    }

    #[test]
    fn base_noise_is_bounded_by_one() {
        let lat = GradientLattice::new(&mut RngStream::new(2, 0).draws(Purpose::Perlin));
        let mut max = 0.0f64;
        for i in 0..200 {
            for j in 0..200 {
                max = max.max(lat.sample(i as f64 * 0.031, j as f64 * 0.027).abs());
            }
        }
        assert!(max < 1.0 && max > 0.2, "max = {max}");
    }

    #[test]
    fn same_draws_same_field() {
        let s = RngStream::new(4, 2).with_frame(7);
        let a = PerlinField::generate(40, 30, &mut s.draws(Purpose::Perlin));
        let b = PerlinField::generate(40, 30, &mut s.draws(Purpose::Perlin));
        assert_eq!(a, b);
        let c = PerlinField::generate(40, 30, &mut s.clone().with_frame(8).draws(Purpose::Perlin));
        assert_ne!(a, c);
    }

    #[test]
    fn continuous_along_a_line() {
        // sampling a single octave at shrinking offsets converges
        let lat = GradientLattice::new(&mut RngStream::new(5, 0).draws(Purpose::Perlin));
        let (x, y) = (3.37, 8.91);
        let base = lat.sample(x, y);
        let near = lat.sample(x + 1e-7, y - 1e-7);
        assert!((near - base).abs() < 1e-6);
    }
}

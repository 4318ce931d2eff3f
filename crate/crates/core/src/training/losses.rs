//! Distillation losses over batches of actions and encoder latents.

use crate::error::{Error, Result};

/// Default latent width of the depth encoder.
pub const DEFAULT_LATENT_DIM: usize = 128;
/// Variance stabilizer added to the batch variance before the KL term.
pub const DEFAULT_KL_EPSILON: f64 = 1e-5;

/// Row-major `N x D` matrix of `f32`. Used for encoder latents and action
/// means alike.
#[derive(Clone, Debug, PartialEq)]
pub struct LatentBatch {
    rows: usize,
    cols: usize,
    values: Vec<f32>,
}

impl LatentBatch {
    pub fn new(rows: usize, cols: usize, values: Vec<f32>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} values for a {rows}x{cols} batch",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite batch entry".into()));
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_rows(rows: &[Vec<f32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged batch rows".into()));
        }
        LatentBatch::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }
}

fn check_paired(a: &LatentBatch, b: &LatentBatch) -> Result<()> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::InvalidArgument(format!(
            "batch shapes differ: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if a.rows == 0 {
        return Err(Error::InvalidArgument("empty batch".into()));
    }
    Ok(())
}

/// Mean over rows of `|a_i - b_i|^2`.
fn mean_squared_distance(a: &LatentBatch, b: &LatentBatch) -> Result<f64> {
    check_paired(a, b)?;
    let total: f64 = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(b.row(i))
                .map(|(&x, &y)| {
                    let d = x as f64 - y as f64;
                    d * d
                })
                .sum::<f64>()
        })
        .sum();
    Ok(total / a.rows as f64)
}

/// Behavior cloning: mean squared L2 distance between student and teacher
/// action means.
pub fn behavior_loss(mu_deploy: &LatentBatch, mu_priv: &LatentBatch) -> Result<f64> {
    mean_squared_distance(mu_deploy, mu_priv)
}

/// Mean squared L2 distance between paired clean and augmented latents.
pub fn denoise_loss(z_clean: &LatentBatch, z_aug: &LatentBatch) -> Result<f64> {
    mean_squared_distance(z_clean, z_aug)
}

/// KL of the batch's diagonal Gaussian against `N(0, I)`, summed over the
/// latent dimensions. Moments are population moments (`1/N`), and
/// `epsilon` is added to each variance.
pub fn kl_loss(z: &LatentBatch, epsilon: f64) -> Result<f64> {
    if z.rows < 2 {
        return Err(Error::InvalidArgument(format!(
            "KL needs at least two rows, got {}",
            z.rows
        )));
    }
    let n = z.rows as f64;
    let mut kl = 0.0;
    for j in 0..z.cols {
        let col = (0..z.rows).map(|i| z.values[i * z.cols + j] as f64);
        let mean = col.clone().sum::<f64>() / n;
        let var = col.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n + epsilon;
        if !(var > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "latent dimension {j} has zero variance; use a positive epsilon"
            )));
        }
        kl += gaussian_kl_to_standard(mean, var);
    }
    Ok(kl)
}

/// `KL(N(mean, var) || N(0, 1))` for one dimension.
#[inline]
pub fn gaussian_kl_to_standard(mean: f64, var: f64) -> f64 {
    0.5 * (var + mean * mean - 1.0 - var.ln())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossWeights {
    pub denoise: f64,
    pub kl: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        LossWeights {
            denoise: 0.1,
            kl: 0.1,
        }
    }
}

pub fn total_loss(behavior: f64, denoise: f64, kl: f64, weights: LossWeights) -> f64 {
    behavior + weights.denoise * denoise + weights.kl * kl
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistillationLosses {
    pub behavior: f64,
    pub denoise: f64,
    pub kl: f64,
    pub total: f64,
}

/// All three terms and their weighted total. The KL term regularizes the
/// clean-input latents `z_clean`.
pub fn distillation_losses(
    mu_deploy: &LatentBatch,
    mu_priv: &LatentBatch,
    z_clean: &LatentBatch,
    z_aug: &LatentBatch,
    weights: LossWeights,
    kl_epsilon: f64,
) -> Result<DistillationLosses> {
    let behavior = behavior_loss(mu_deploy, mu_priv)?;
    let denoise = denoise_loss(z_clean, z_aug)?;
    let kl = kl_loss(z_clean, kl_epsilon)?;
    Ok(DistillationLosses {
        behavior,
        denoise,
        kl,
        total: total_loss(behavior, denoise, kl, weights),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn batch(rows: &[&[f32]]) -> LatentBatch {
        LatentBatch::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn behavior_examples() {
        let a = batch(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(behavior_loss(&a, &a).unwrap(), 0.0);
        let b = batch(&[&[4.0, 6.0]]);
        let c = batch(&[&[1.0, 2.0]]);
        assert_eq!(behavior_loss(&b, &c).unwrap(), 25.0);
    }

    #[test]
    fn denoise_unit_offset() {
        let n = 8;
        let clean = LatentBatch::new(n, 4, vec![0.5; n * 4]).unwrap();
        let mut vals = vec![0.5; n * 4];
        vals[2] += 1.0;
        let aug = LatentBatch::new(n, 4, vals).unwrap();
        assert!((denoise_loss(&clean, &aug).unwrap() - 1.0 / n as f64).abs() < 1e-12);
        assert_eq!(
            denoise_loss(&clean, &aug).unwrap(),
            denoise_loss(&aug, &clean).unwrap()
        );
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = batch(&[&[1.0, 2.0]]);
        let b = batch(&[&[1.0, 2.0, 3.0]]);
        assert!(behavior_loss(&a, &b).is_err());
        assert!(LatentBatch::new(2, 2, vec![0.0; 3]).is_err());
        assert!(LatentBatch::new(1, 1, vec![f32::NAN]).is_err());
    }

    #[test]
    fn kl_prior_match_is_zero() {
        // per-dim mean 0 and population variance 1
        let z = batch(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        assert_eq!(kl_loss(&z, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn kl_shifted_mean() {
        let z = batch(&[&[0.0], &[2.0]]);
        assert!((kl_loss(&z, 0.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kl_needs_two_rows() {
        assert!(kl_loss(&batch(&[&[1.0]]), 1e-5).is_err());
        let constant = batch(&[&[1.0], &[1.0]]);
        assert!(kl_loss(&constant, 0.0).is_err());
        assert!(kl_loss(&constant, 1e-5).unwrap() > 0.0);
    }

    #[test]
    fn total_weights() {
        let w = LossWeights::default();
        assert_eq!(total_loss(1.0, 0.0, 0.0, w), 1.0);
        assert!((total_loss(1.0, 1.0, 1.0, w) - 1.2).abs() < 1e-15);
        let zero = LossWeights { denoise: 0.0, kl: 0.0 };
        assert_eq!(total_loss(0.7, 5.0, 9.0, zero), 0.7);
    }
}

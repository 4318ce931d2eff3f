use crate::error::{Error, Result};

/// Per-step joint torques (N m) and joint velocities (rad/s).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerTrace {
    torques: Vec<Vec<f64>>,
    velocities: Vec<Vec<f64>>,
}

impl PowerTrace {
    pub fn new(torques: Vec<Vec<f64>>, velocities: Vec<Vec<f64>>) -> Result<Self> {
        if torques.is_empty() {
            return Err(Error::InvalidArgument("power trace needs at least one step".into()));
        }
        if torques.len() != velocities.len() {
            return Err(Error::InvalidArgument(format!(
                "{} torque steps vs {} velocity steps",
                torques.len(),
                velocities.len()
            )));
        }
        let joints = torques[0].len();
        if torques.iter().chain(&velocities).any(|s| s.len() != joints) {
            return Err(Error::InvalidArgument("joint count varies across steps".into()));
        }
        Ok(Self { torques, velocities })
    }

    pub fn steps(&self) -> usize {
        self.torques.len()
    }
}

/// Mean over steps of `|tau_t * qdot_t|_2` (elementwise product), watts.
pub fn avg_power(trace: &PowerTrace) -> f64 {
    let sum: f64 = trace
        .torques
        .iter()
        .zip(&trace.velocities)
        .map(|(tau, qd)| {
            tau.iter()
                .zip(qd)
                .map(|(t, v)| (t * v) * (t * v))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    sum / trace.steps() as f64
}

/// Relative power increase in percent, `(p_noisy - p_clean) / p_clean * 100`.
pub fn pdr(p_noisy: f64, p_clean: f64) -> Result<f64> {
    if !(p_clean > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "clean power must be positive, got {p_clean}"
        )));
    }
    Ok((p_noisy - p_clean) / p_clean * 100.0)
}

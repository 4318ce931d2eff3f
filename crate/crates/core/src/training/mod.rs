//! Numeric kernels consumed by the learning stack: head routing, motion-prior
//! observations, terrain rewards, distillation losses and power metrics.

pub mod amp;
pub mod losses;
pub mod metrics;
pub mod rewards;
pub mod routing;

pub use amp::{amp_features, AmpConfig, AmpObservation, BodyState, RobotState};
pub use losses::{
    behavior_loss, denoise_loss, distillation_losses, gaussian_kl_to_standard, kl_loss,
    total_loss, DistillationLosses, LatentBatch, LossWeights, DEFAULT_KL_EPSILON,
    DEFAULT_LATENT_DIM,
};
pub use metrics::{avg_power, pdr, PowerTrace};
pub use rewards::{
    applicable_rewards, reward_contact, reward_vel_dir, reward_vel_exp, terrain_reward,
    RewardConfig, RewardId, RewardInputs,
};
pub use routing::{route, route_batch, NUM_HEADS};

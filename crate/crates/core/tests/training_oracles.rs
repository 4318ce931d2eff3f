use sdf_core::terrain::{terrain_category, TerrainCategory, TerrainFamily};
use sdf_core::training::{
    applicable_rewards, avg_power, behavior_loss, denoise_loss, distillation_losses, kl_loss, pdr,
    reward_contact, reward_vel_dir, reward_vel_exp, route, route_batch, total_loss, LatentBatch,
    LossWeights, PowerTrace, RewardId,
};

/// `KL(N(mu, var) || N(0, 1))` by composite Simpson over `mu +- 14 sigma`.
fn kl_quadrature(mu: f64, var: f64) -> f64 {
    let sigma = var.sqrt();
    let (a, b) = (mu - 14.0 * sigma, mu + 14.0 * sigma);
    let n = 20_000;
    let h = (b - a) / n as f64;
    let f = |x: f64| {
        let log_p = -0.5 * ((x - mu) / sigma).powi(2) - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln();
        let log_q = -0.5 * x * x - 0.5 * (2.0 * std::f64::consts::PI).ln();
        log_p.exp() * (log_p - log_q)
    };
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Tiny deterministic generator so the oracle does not share code with the
/// library's streams.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

#[test]
fn kl_matches_numerical_integration() {
    let mut g = Lcg(12345);
    for _ in 0..500 {
        // dyadic moments are exact in f32: mu in [-2, 2], sigma in [0.25, 2.5]
        let mu = (g.next() % 4097) as f64 / 1024.0 - 2.0;
        let sigma = (256 + g.next() % 2305) as f64 / 1024.0;
        let z = LatentBatch::new(2, 1, vec![(mu - sigma) as f32, (mu + sigma) as f32]).unwrap();
        let got = kl_loss(&z, 0.0).unwrap();
        let want = kl_quadrature(mu, sigma * sigma);
        assert!((got - want).abs() < 1e-6, "mu {mu} sigma {sigma}: {got} vs {want}");
    }
}

#[test]
fn kl_unit_shift_is_one_half() {
    // population mean 1, variance 1
    let z = LatentBatch::new(2, 1, vec![0.0, 2.0]).unwrap();
    assert_eq!(kl_loss(&z, 0.0).unwrap(), 0.5);
    assert!((kl_quadrature(1.0, 1.0) - 0.5).abs() < 1e-9);
}

#[test]
fn kl_sums_over_dimensions() {
    let z = LatentBatch::new(2, 3, vec![0.0, -1.0, 0.5, 2.0, 1.0, 0.5]).unwrap();
    let per_dim = [kl_quadrature(1.0, 1.0), kl_quadrature(0.0, 1.0), 0.0];
    let got = kl_loss(&z, 1e-5).unwrap();
    // the constant third dimension has variance epsilon
    let third = 0.5 * (1e-5 + 0.25 - 1.0 - (1e-5f64).ln());
    assert!((got - (per_dim[0] + per_dim[1] + third)).abs() < 1e-4);
}

#[test]
fn loss_identities_and_weighting() {
    let a = LatentBatch::from_rows(&[vec![0.3, -1.0, 2.0], vec![1.5, 0.0, -0.25]]).unwrap();
    assert_eq!(behavior_loss(&a, &a).unwrap(), 0.0);
    assert_eq!(denoise_loss(&a, &a).unwrap(), 0.0);
    let w = LossWeights::default();
    assert_eq!(w.denoise, 0.1);
    assert_eq!(w.kl, 0.1);
    assert_eq!(total_loss(1.0, 1.0, 1.0, w), 1.0 + 0.1 + 0.1);
    assert_eq!(total_loss(2.0, 0.0, 0.0, w), 2.0);
    let z = LatentBatch::new(2, 1, vec![0.0, 2.0]).unwrap();
    let l = distillation_losses(&a, &a, &z, &z, w, 0.0).unwrap();
    assert_eq!((l.behavior, l.denoise, l.kl), (0.0, 0.0, 0.5));
    assert_eq!(l.total, 0.1 * 0.5);
}

#[test]
fn reward_closed_forms() {
    let sigma = 0.5;
    let r = reward_vel_exp([1.0, 0.0], [0.5, 0.0], sigma);
    assert!((r - (-1f64).exp()).abs() < 1e-12);
    let r = reward_vel_exp([0.0, 0.3], [0.3 * 0.6, 0.3 - 0.3 * 0.8], 0.3);
    assert!((r - (-1f64).exp()).abs() < 1e-12);

    let cmd = [0.6, 0.0];
    assert_eq!(
        reward_vel_dir(cmd, [1.2, 0.0], 1e-3),
        reward_vel_dir(cmd, cmd, 1e-3)
    );
    assert!((reward_vel_dir(cmd, cmd, 1e-3) - 0.6 / 0.601).abs() < 1e-12);

    let two = [-0.1, 0.1];
    let scans: [&[f64]; 1] = [&two];
    assert!((reward_contact(&scans, &[true], 0.2) - 0.1).abs() < 1e-15);
}

#[test]
fn applicability_matrix() {
    use RewardId::*;
    let table: [(TerrainCategory, &[RewardId]); 3] = [
        (TerrainCategory::StairsPlatforms, &[VelExp, Contact]),
        (TerrainCategory::GapCrossing, &[VelDir]),
        (TerrainCategory::Rough, &[VelExp]),
    ];
    for (cat, ids) in table {
        assert_eq!(applicable_rewards(cat), ids);
    }
}

#[test]
fn routing_selects_by_label() {
    let heads = [10, 20, 30];
    for (family, expect) in [
        (TerrainFamily::StairsUp, 10),
        (TerrainFamily::StairsDown, 10),
        (TerrainFamily::PlatformUp, 10),
        (TerrainFamily::PlatformDown, 10),
        (TerrainFamily::Gap, 20),
        (TerrainFamily::Rough, 30),
    ] {
        assert_eq!(route(terrain_category(family), &heads), expect);
    }
    let cats = [TerrainCategory::Rough, TerrainCategory::StairsPlatforms];
    assert_eq!(route_batch(&cats, &[[1, 2, 3], [4, 5, 6]]), vec![3, 4]);
    assert_eq!(TerrainCategory::from_label(2).unwrap(), TerrainCategory::GapCrossing);
    assert!(TerrainCategory::from_label(0).is_err());
    assert!(TerrainCategory::from_label(4).is_err());
}

#[test]
fn power_metrics_hand_computed() {
    // one step, |(3 * 2, -4 * 2)| = 10 W
    let trace = PowerTrace::new(vec![vec![3.0, -4.0]], vec![vec![2.0, 2.0]]).unwrap();
    assert_eq!(avg_power(&trace) as f32, 10.0f32);
    // two steps: 5 W and 0 W
    let trace = PowerTrace::new(
        vec![vec![3.0, 4.0], vec![1.0, 1.0]],
        vec![vec![1.0, 1.0], vec![0.0, 0.0]],
    )
    .unwrap();
    assert_eq!(avg_power(&trace) as f32, 2.5f32);
    assert_eq!(pdr(12.0, 10.0).unwrap() as f32, 20.0f32);
    let p = pdr(32.4, 27.7).unwrap();
    assert!((p - 16.967_509_025_270_76).abs() < 1e-9, "{p}");
    assert!(pdr(1.0, 0.0).is_err());
}

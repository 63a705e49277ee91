#![allow(dead_code)]

use qes_core::{Channel, PhysicalConfig};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub cfg: PhysicalConfig,
    pub channel: Channel,
}

/// Random physical configurations and channels at level `n`.
pub fn sweep(seed: u64, count: usize, n: u32) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let cfg = PhysicalConfig::new(
                rng.random_range(0.5..2.0),
                rng.random_range(0.0..1.0),
                0.0,
                rng.random_range(0.2..1.5),
                rng.random_range(-1.0..1.0),
            )
            .unwrap();
            let channel = Channel::new(rng.random_range(-2..=2), rng.random_range(-1.5..1.5), n).unwrap();
            Draw { cfg, channel }
        })
        .collect()
}

pub fn benchmark() -> (PhysicalConfig, Channel) {
    (
        PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).unwrap(),
        Channel::new(0, 0.0, 1).unwrap(),
    )
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

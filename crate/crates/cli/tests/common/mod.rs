#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use qes_core::{Channel, PhysicalConfig};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn qes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qes")).args(args).output().expect("binary runs")
}

pub fn qes_in(out: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    qes(&all)
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

/// Data rows (comments and header dropped), split on commas. Only for
/// tables without quoted fields.
pub fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

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

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

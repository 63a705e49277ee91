//! Shared inputs for the benchmarks.

use qes_core::{Channel, PhysicalConfig};

/// m = 1, η = 1/2, ω = 0, χ = 0: the reference channel with closed-form
/// energies √2(4 ∓ √6).
pub fn benchmark_config() -> PhysicalConfig {
    PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).expect("valid benchmark config")
}

pub fn benchmark_channel(n: u32) -> Channel {
    Channel::new(0, 0.0, n).expect("valid benchmark channel")
}

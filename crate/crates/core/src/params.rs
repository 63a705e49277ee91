//! Physical parameters, conserved quantum numbers and the map onto the
//! dimensionless radial problem.
//!
//! Natural units (c = ħ = 1) are used throughout. `omega` is the raw
//! coefficient of r² in V(r) = ω r² + λ r⁴ + η r⁶; it is **not** an angular
//! frequency (there is no ½ m Ω² convention here).

use std::f64::consts::SQRT_2;

use crate::error::{domain, Result};

/// Oscillator and medium parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    pub mass: f64,
    /// Coefficient of r².
    pub omega: f64,
    /// Coefficient of r⁴.
    pub lambda: f64,
    /// Coefficient of r⁶, strictly positive for bound states of the exact problem.
    pub eta: f64,
    /// Burgers-vector parameter of the screw dislocation (a length).
    pub chi: f64,
}

impl PhysicalConfig {
    pub fn new(mass: f64, omega: f64, lambda: f64, eta: f64, chi: f64) -> Result<Self> {
        let cfg = Self {
            mass,
            omega,
            lambda,
            eta,
            chi,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(domain("mass", format!("must be finite and > 0, got {}", self.mass)));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(domain("eta", format!("must be finite and > 0, got {}", self.eta)));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(domain("omega", format!("must be finite and >= 0, got {}", self.omega)));
        }
        if !self.lambda.is_finite() {
            return Err(domain("lambda", "must be finite"));
        }
        if !self.chi.is_finite() {
            return Err(domain("chi", "must be finite"));
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }

    /// 2mη, the combination every dimensionless quantity is measured against.
    pub fn two_m_eta(&self) -> f64 {
        2.0 * self.mass * self.eta
    }

    /// Factor s in ξ = s r².
    pub fn xi_scale(&self) -> f64 {
        self.two_m_eta().powf(0.25) / SQRT_2
    }

    pub fn potential(&self, r: f64) -> f64 {
        let r2 = r * r;
        r2 * (self.omega + r2 * (self.lambda + r2 * self.eta))
    }
}

/// Conserved quantum numbers (l, k) and the polynomial level n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub l: i64,
    pub k: f64,
    pub n: u32,
}

impl Channel {
    pub fn new(l: i64, k: f64, n: u32) -> Result<Self> {
        let ch = Self { l, k, n };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(domain("n", "polynomial level must be >= 1"));
        }
        if !self.k.is_finite() {
            return Err(domain("k", "must be finite"));
        }
        Ok(())
    }

    pub fn gamma(&self, chi: f64) -> f64 {
        effective_gamma(self.l, chi, self.k)
    }
}

/// The dimensionless set (γ, a, b, c) of the radial equation in ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessSet {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl DimensionlessSet {
    pub fn gamma_abs(&self) -> f64 {
        self.gamma.abs()
    }

    /// Λ = a²/4 − c − 2 − |γ|; a degree-n polynomial solution needs Λ = 2n.
    pub fn termination_parameter(&self) -> f64 {
        self.a * self.a / 4.0 - self.c - 2.0 - self.gamma_abs()
    }
}

/// γ = l − χ k.
pub fn effective_gamma(l: i64, chi: f64, k: f64) -> f64 {
    l as f64 - chi * k
}

pub fn to_dimensionless(cfg: &PhysicalConfig, ch: &Channel, energy: f64) -> Result<DimensionlessSet> {
    cfg.validate()?;
    let tme = cfg.two_m_eta();
    let m = cfg.mass;
    Ok(DimensionlessSet {
        gamma: ch.gamma(cfg.chi),
        a: 2.0 * m * cfg.lambda / (SQRT_2 * tme.powf(0.75)),
        b: b_of_energy(cfg, ch.k, energy),
        c: m * cfg.omega / tme.sqrt(),
    })
}

/// b = (2mℰ − k²) / (2√2 (2mη)^{1/4}).
pub fn b_of_energy(cfg: &PhysicalConfig, k: f64, energy: f64) -> f64 {
    (2.0 * cfg.mass * energy - k * k) / energy_unit(cfg)
}

/// Inverse of [`b_of_energy`].
pub fn energy_of_b(cfg: &PhysicalConfig, k: f64, b: f64) -> f64 {
    (energy_unit(cfg) * b + k * k) / (2.0 * cfg.mass)
}

fn energy_unit(cfg: &PhysicalConfig) -> f64 {
    2.0 * SQRT_2 * cfg.two_m_eta().powf(0.25)
}

pub fn xi_of_r(cfg: &PhysicalConfig, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain("r", format!("must be >= 0, got {r}")));
    }
    Ok(cfg.xi_scale() * r * r)
}

pub fn r_of_xi(cfg: &PhysicalConfig, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("xi", format!("must be >= 0, got {xi}")));
    }
    Ok((xi / cfg.xi_scale()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg(m: f64, omega: f64, lambda: f64, eta: f64) -> PhysicalConfig {
        PhysicalConfig::new(m, omega, lambda, eta, 0.0).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(effective_gamma(0, 0.0, 0.0), 0.0);
        assert_eq!(effective_gamma(1, 0.5, 2.0), 0.0);
        assert_eq!(effective_gamma(2, 0.25, 2.0), 1.5);
    }

    #[test]
    fn dimensionless_all_zero() {
        let d = to_dimensionless(&cfg(1.0, 0.0, 0.0, 0.5), &Channel::new(0, 0.0, 1).unwrap(), 0.0).unwrap();
        assert_eq!((d.gamma, d.a, d.b, d.c), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn dimensionless_direct_substitution() {
        let d = to_dimensionless(&cfg(1.0, 3.0, 1.0, 0.5), &Channel::new(0, 0.0, 1).unwrap(), 0.0).unwrap();
        assert_relative_eq!(d.a, SQRT_2, max_relative = 1e-15);
        assert_eq!(d.b, 0.0);
        assert_relative_eq!(d.c, 3.0, max_relative = 1e-15);
    }

    #[test]
    fn dimensionless_unit_values() {
        // 2mη = 1: a = 2·½·√2/√2 = 1, b = (2·½·2√2)/(2√2) = 1
        let c = cfg(0.5, 0.0, SQRT_2, 1.0);
        let d = to_dimensionless(&c, &Channel::new(1, 0.0, 1).unwrap(), 2.0 * SQRT_2).unwrap();
        assert_eq!(d.gamma, 1.0);
        assert_relative_eq!(d.a, 1.0, max_relative = 1e-15);
        assert_relative_eq!(d.b, 1.0, max_relative = 1e-15);
        assert_eq!(d.c, 0.0);
    }

    #[test]
    fn rejects_bad_mass_and_eta() {
        let ch = Channel::new(0, 0.0, 1).unwrap();
        let mut c = cfg(1.0, 0.0, 0.0, 0.5);
        c.eta = 0.0;
        assert!(to_dimensionless(&c, &ch, 1.0).is_err());
        c.eta = 0.5;
        c.mass = -1.0;
        assert!(to_dimensionless(&c, &ch, 1.0).is_err());
        assert!(Channel::new(0, 0.0, 0).is_err());
    }

    #[test]
    fn xi_examples() {
        let c = cfg(1.0, 0.0, 0.0, 0.5);
        assert_eq!(xi_of_r(&c, 0.0).unwrap(), 0.0);
        assert_relative_eq!(xi_of_r(&c, 1.0).unwrap(), 1.0 / SQRT_2, max_relative = 1e-15);
        // (2·2·8)^{1/4}·4/√2 evaluated independently
        let expected = 32f64.sqrt().sqrt() * 4.0 / 2f64.sqrt();
        assert_relative_eq!(xi_of_r(&cfg(2.0, 0.0, 0.0, 8.0), 2.0).unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, 6.727171322029716, max_relative = 1e-14);
        assert!(xi_of_r(&c, -1e-3).is_err());
        assert_eq!(r_of_xi(&c, 0.0).unwrap(), 0.0);
        assert_relative_eq!(r_of_xi(&c, 1.0 / SQRT_2).unwrap(), 1.0, max_relative = 1e-15);
        assert!(r_of_xi(&c, -1.0).is_err());
    }

    #[test]
    fn energy_b_round_trip() {
        let c = cfg(0.7, 0.3, 1.1, 2.3);
        for &(k, e) in &[(0.0, 1.5), (1.3, -0.2), (-2.0, 7.0)] {
            assert_relative_eq!(energy_of_b(&c, k, b_of_energy(&c, k, e)), e, max_relative = 1e-13);
        }
    }

    proptest! {
        #[test]
        fn xi_round_trip(r in 0.0f64..1e3, m in 0.05f64..20.0, eta in 0.05f64..20.0) {
            let c = cfg(m, 0.0, 0.0, eta);
            let back = r_of_xi(&c, xi_of_r(&c, r).unwrap()).unwrap();
            prop_assert!((back - r).abs() <= 1e-14 * r.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn xi_monotone(r1 in 0.0f64..50.0, dr in 1e-6f64..10.0, m in 0.1f64..5.0, eta in 0.1f64..5.0) {
            let c = cfg(m, 0.0, 0.0, eta);
            prop_assert!(xi_of_r(&c, r1 + dr).unwrap() > xi_of_r(&c, r1).unwrap());
        }

        #[test]
        fn defect_free_gamma(l in -50i64..50, k in -10.0f64..10.0) {
            prop_assert_eq!(effective_gamma(l, 0.0, k), l as f64);
        }

        // lengths × s, energies and masses × 1/s: ω ~ s⁻³, λ ~ s⁻⁵, η ~ s⁻⁷
        #[test]
        fn rescaling_invariance(
            s in 0.1f64..10.0,
            m in 0.1f64..5.0, omega in 0.0f64..5.0, lambda in -3.0f64..3.0, eta in 0.1f64..5.0,
            chi in -2.0f64..2.0, l in -4i64..4, k in -3.0f64..3.0, e in -5.0f64..20.0,
        ) {
            let base = PhysicalConfig::new(m, omega, lambda, eta, chi).unwrap();
            let scaled = PhysicalConfig::new(m / s, omega / s.powi(3), lambda / s.powi(5), eta / s.powi(7), chi * s).unwrap();
            let d0 = to_dimensionless(&base, &Channel::new(l, k, 1).unwrap(), e).unwrap();
            let d1 = to_dimensionless(&scaled, &Channel::new(l, k / s, 1).unwrap(), e / s).unwrap();
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300) + 1e-12;
            prop_assert!(close(d0.gamma, d1.gamma));
            prop_assert!(close(d0.a, d1.a));
            prop_assert!(close(d0.b, d1.b));
            prop_assert!(close(d0.c, d1.c));
        }
    }
}

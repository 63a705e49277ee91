mod common;

use common::{rel, sweep};
use proptest::prelude::*;
use qes_core::quantization::{termination_polynomial, EnergyQuadratic};
use qes_core::{
    closed_form, energy_roots_general, ground_energies, lambda_constraint, to_dimensionless, Channel, HeunParams,
    PhysicalConfig,
};

#[test]
fn both_conditions_hold_at_every_root() {
    for n in [1, 2, 3] {
        for d in sweep(100 + n as u64, 30, n) {
            let sol = energy_roots_general(&d.cfg, &d.channel).unwrap();
            assert_eq!(sol.energy_roots.len(), n as usize + 1);
            for (i, &e) in sol.energy_roots.iter().enumerate() {
                let dims = to_dimensionless(&sol.config, &d.channel, e).unwrap();
                assert!((dims.termination_parameter() - 2.0 * n as f64).abs() < 1e-12);
                let seq = sol.heun(i, 10).unwrap();
                let head = seq.coeffs()[..=n as usize].iter().fold(0.0f64, |m, f| m.max(f.abs()));
                for f in &seq.coeffs()[n as usize + 1..] {
                    assert!(f.abs() <= 1e-10 * head, "{d:?} root {i}: {f}");
                }
            }
        }
    }
}

#[test]
fn general_path_matches_quadratic_at_first_level() {
    for d in sweep(200, 50, 1) {
        let general = energy_roots_general(&d.cfg, &d.channel).unwrap();
        let quad = ground_energies(&d.cfg, &d.channel).unwrap();
        for (a, b) in general.energy_roots.iter().zip(&quad.energy_roots) {
            assert!(rel(*a, *b) < 1e-10, "{d:?}: {a} vs {b}");
        }
    }
}

#[test]
fn corrected_closed_form_matches_and_printed_form_is_off_by_mass() {
    for d in sweep(300, 50, 1) {
        let quad = ground_energies(&d.cfg, &d.channel).unwrap();
        let cf = closed_form(&d.cfg, &d.channel).unwrap();
        for (e, c) in quad.energy_roots.iter().zip(cf.corrected_roots()) {
            assert!(rel(c, *e) < 1e-12, "{d:?}: {c} vs {e}");
        }
        assert!(rel(cf.first_term_ratio(), d.cfg.mass) < 1e-14);
    }
}

#[test]
fn plus_root_exceeds_minus_root() {
    for d in sweep(400, 50, 1) {
        let quad = ground_energies(&d.cfg, &d.channel).unwrap();
        assert!(quad.energy_roots[1] > quad.energy_roots[0]);
        let q = EnergyQuadratic::new(&quad.config, quad.gamma.abs());
        assert!(q.discriminant() > 0.0);
    }
}

// The termination condition is the characteristic polynomial of a tridiagonal
// matrix with positive off-diagonal products, so the roots are the eigenvalues
// of a symmetric matrix.
#[test]
fn roots_match_symmetric_jacobi_matrix() {
    for n in 1..=4u32 {
        for d in sweep(500 + n as u64, 10, n) {
            let sol = energy_roots_general(&d.cfg, &d.channel).unwrap();
            let dims = sol.dimensionless(0).unwrap();
            let (g, a, c) = (dims.gamma_abs(), dims.a, dims.c);
            let lam = HeunParams::new(g, a, 0.0, c).unwrap().lambda_term();
            let size = n as usize + 1;
            let mut m = nalgebra::DMatrix::<f64>::zeros(size, size);
            for j in 0..size {
                let jf = j as f64;
                m[(j, j)] = a * jf + a * (g + 1.0) / 2.0;
                if j + 1 < size {
                    let prod = (jf + 1.0) * (jf + 1.0 + g) * (lam - 2.0 * jf);
                    assert!(prod > 0.0);
                    m[(j, j + 1)] = prod.sqrt();
                    m[(j + 1, j)] = prod.sqrt();
                }
            }
            let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            eig.sort_by(f64::total_cmp);
            for (b, e) in sol.b_roots.iter().zip(&eig) {
                assert!((b - e).abs() < 1e-9 * e.abs().max(1.0), "n={n}: {b} vs {e}");
            }
            assert_eq!(termination_polynomial(g, a, c, n).degree(), size);
        }
    }
}

#[test]
fn non_root_does_not_terminate() {
    for d in sweep(600, 20, 1) {
        let sol = energy_roots_general(&d.cfg, &d.channel).unwrap();
        let mid = 0.5 * (sol.b_roots[0] + sol.b_roots[1]);
        let dims = sol.dimensionless(0).unwrap();
        let p = termination_polynomial(dims.gamma_abs(), dims.a, dims.c, 1);
        assert!(p.eval(mid).abs() > 1e-6);
    }
}

#[test]
fn second_level_benchmark_has_three_terminating_roots() {
    let cfg = PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).unwrap();
    let ch = Channel::new(0, 0.0, 2).unwrap();
    assert!(rel(lambda_constraint(&cfg, &ch).unwrap(), 12f64.sqrt()) < 1e-15);
    let sol = energy_roots_general(&cfg, &ch).unwrap();
    assert_eq!(sol.energy_roots.len(), 3);
    for i in 0..3 {
        assert_eq!(sol.heun(i, 10).unwrap().truncation_index(), Some(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn momentum_enters_only_through_kinetic_shift(
        m in 0.5f64..2.0, omega in 0.0f64..1.0, eta in 0.2f64..1.5, l in -3i64..=3,
        k1 in -2.0f64..2.0, k2 in -2.0f64..2.0,
    ) {
        let cfg = PhysicalConfig::new(m, omega, 0.0, eta, 0.0).unwrap();
        let s1 = energy_roots_general(&cfg, &Channel::new(l, k1, 1).unwrap()).unwrap();
        let s2 = energy_roots_general(&cfg, &Channel::new(l, k2, 1).unwrap()).unwrap();
        for (a, b) in s1.energy_roots.iter().zip(&s2.energy_roots) {
            let shifted = a - k1 * k1 / (2.0 * m) + k2 * k2 / (2.0 * m);
            prop_assert!((shifted - b).abs() < 1e-10 * b.abs().max(1.0));
        }
    }

    // Natural-units rescaling (lengths × s): m, ℰ, k scale as 1/s,
    // ω as s⁻³, λ as s⁻⁵, η as s⁻⁷, χ as s.
    #[test]
    fn energies_scale_with_inverse_length(
        m in 0.5f64..2.0, omega in 0.0f64..1.0, eta in 0.2f64..1.5, chi in -1.0f64..1.0,
        l in -2i64..=2, k in -1.5f64..1.5, s in 0.3f64..3.0,
    ) {
        let cfg = PhysicalConfig::new(m, omega, 0.0, eta, chi).unwrap();
        let scaled = PhysicalConfig::new(m / s, omega / s.powi(3), 0.0, eta / s.powi(7), chi * s).unwrap();
        let s1 = energy_roots_general(&cfg, &Channel::new(l, k, 1).unwrap()).unwrap();
        let s2 = energy_roots_general(&scaled, &Channel::new(l, k / s, 1).unwrap()).unwrap();
        prop_assert!(rel(s2.lambda_nl * s.powi(5), s1.lambda_nl) < 1e-12);
        for (a, b) in s1.energy_roots.iter().zip(&s2.energy_roots) {
            prop_assert!(rel(b / a, 1.0 / s) < 1e-10, "{} vs {}", b / a, 1.0 / s);
        }
    }
}

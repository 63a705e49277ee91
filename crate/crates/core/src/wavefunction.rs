//! Bound states R(ξ) = e^{−ξ²/2} e^{−aξ/2} ξ^{|γ|/2} H(ξ) built from a
//! truncated Heun polynomial, normalized with the measure r dr.
//!
//! The full state is ψ = e^{ilφ + ikz} R(r); the phase carries no numerical
//! content and is not represented.

use std::num::NonZeroUsize;

use gauss_quad::{GaussJacobi, GaussLegendre};

use crate::error::{domain, Error, Result};
use crate::heun::HeunCoefficientSequence;
use crate::oracle::{default_r_max, RadialGrid};
use crate::params::{xi_of_r, Channel, DimensionlessSet, PhysicalConfig};
use crate::poly::Polynomial;
use crate::quantization::{Branch, ExactSolution};

const PANEL_DEGREE: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub config: PhysicalConfig,
    pub channel: Channel,
    pub branch: Branch,
    pub energy: f64,
    pub dimensionless: DimensionlessSet,
    pub heun: HeunCoefficientSequence,
    pub norm_constant: f64,
    pub node_count: usize,
    /// Radius beyond which the state is negligible (same rule as the oracle box).
    pub r_cut: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub r: f64,
    pub xi: f64,
    pub radial: f64,
    /// √r · R, directly comparable with the oracle eigenvector.
    pub u: f64,
}

pub fn assemble(solution: &ExactSolution, root_index: usize) -> Result<BoundState> {
    let energy = solution.energy(root_index)?;
    let dims = solution.dimensionless(root_index)?;
    let heun = solution.heun(root_index, 10)?;
    BoundState::new(
        solution.config,
        solution.channel,
        solution.branch_labels[root_index],
        energy,
        dims,
        heun,
    )
}

impl BoundState {
    /// Unnormalized state (norm constant 1) from its parts. Fails unless the
    /// Heun series terminates.
    pub fn new(
        config: PhysicalConfig,
        channel: Channel,
        branch: Branch,
        energy: f64,
        dimensionless: DimensionlessSet,
        heun: HeunCoefficientSequence,
    ) -> Result<Self> {
        let poly = heun.polynomial().ok_or_else(|| Error::NotTruncated {
            tail: heun.tail_ratio(channel.n as usize),
        })?;
        let node_count = positive_roots(poly);
        let b_level = 2.0 * config.mass * energy - channel.k * channel.k;
        let r_cut = default_r_max(&config, dimensionless.gamma_abs(), b_level)?;
        Ok(Self {
            config,
            channel,
            branch,
            energy,
            dimensionless,
            heun,
            norm_constant: 1.0,
            node_count,
            r_cut,
        })
    }

    pub fn with_norm_constant(&self, norm_constant: f64) -> Self {
        Self {
            norm_constant,
            ..self.clone()
        }
    }

    /// e^{−ξ²/2 − aξ/2} ξ^{|γ|/2}
    fn prefactor(&self, xi: f64) -> f64 {
        let d = &self.dimensionless;
        let g = d.gamma_abs();
        let power = if g == 0.0 { 1.0 } else { xi.powf(0.5 * g) };
        (-0.5 * xi * xi - 0.5 * d.a * xi).exp() * power
    }

    pub fn radial_xi(&self, xi: f64) -> Result<f64> {
        Ok(self.norm_constant * self.prefactor(xi) * self.heun.evaluate(xi)?)
    }

    pub fn radial(&self, r: f64) -> Result<f64> {
        self.radial_xi(xi_of_r(&self.config, r)?)
    }

    /// (R, dR/dr, d²R/dr²) from the closed-form factors, r > 0.
    pub fn radial_derivatives(&self, r: f64) -> Result<(f64, f64, f64)> {
        if !(r > 0.0) {
            return Err(domain("r", "derivatives need r > 0"));
        }
        let s = self.config.xi_scale();
        let xi = s * r * r;
        let (h, h1, h2) = self.heun.derivatives(xi)?;
        let d = &self.dimensionless;
        let g = d.gamma_abs();
        let p = -xi - 0.5 * d.a + 0.5 * g / xi;
        let dp = -1.0 - 0.5 * g / (xi * xi);
        let pre = self.norm_constant * self.prefactor(xi);
        let r0 = pre * h;
        let r_xi = pre * (p * h + h1);
        let r_xixi = pre * ((p * p + dp) * h + 2.0 * p * h1 + h2);
        let dxi = 2.0 * s * r;
        Ok((r0, r_xi * dxi, r_xixi * dxi * dxi + r_xi * 2.0 * s))
    }

    /// ∫₀^{r_cut} R² r dr for the current norm constant.
    pub fn norm_integral(&self, quadrature_points: usize) -> Result<f64> {
        let s = self.config.xi_scale();
        let xi_cut = s * self.r_cut * self.r_cut;
        let g = self.dimensionless.gamma_abs();
        let a = self.dimensionless.a;
        let panels = quadrature_points.div_ceil(PANEL_DEGREE).max(1);
        let width = xi_cut / panels as f64;
        let degree = NonZeroUsize::new(PANEL_DEGREE).unwrap();
        let smooth = |xi: f64| {
            let h = self.heun.evaluate(xi).unwrap_or(f64::NAN);
            (-xi * xi - a * xi).exp() * h * h
        };
        // first panel: ξ^{|γ|} is the Jacobi weight (1 + t)^{|γ|} up to (w/2)^{|γ|}
        let jacobi = GaussJacobi::new(
            degree,
            0.0.try_into().expect("finite"),
            g.try_into().map_err(|_| domain("gamma_abs", "invalid Jacobi exponent"))?,
        );
        let mut total = (0.5 * width).powf(g) * jacobi.integrate(0.0, width, smooth);
        let legendre = GaussLegendre::new(degree);
        for i in 1..panels {
            let (lo, hi) = (i as f64 * width, (i + 1) as f64 * width);
            total += legendre.integrate(lo, hi, |xi| xi.powf(g) * smooth(xi));
        }
        let value = self.norm_constant * self.norm_constant * total / (2.0 * s);
        if !value.is_finite() {
            return Err(domain("norm", "non-finite norm integral"));
        }
        Ok(value)
    }

    /// Rescales so that ∫ R² r dr = 1.
    pub fn normalize(&self, quadrature_points: usize) -> Result<Self> {
        let bare = self.with_norm_constant(1.0);
        let integral = bare.norm_integral(quadrature_points)?;
        if !(integral > 0.0) {
            return Err(domain("norm", format!("norm integral {integral} is not positive")));
        }
        Ok(self.with_norm_constant(1.0 / integral.sqrt()))
    }

    /// Largest scaled residual of the radial equation over `r_samples`.
    /// Each residual is divided by the largest of its individual terms.
    pub fn radial_ode_residual(&self, r_samples: &[f64]) -> Result<f64> {
        let cfg = &self.config;
        let m = cfg.mass;
        let k = self.channel.k;
        let gamma = self.dimensionless.gamma;
        let b_level = 2.0 * m * self.energy - k * k;
        let mut worst = 0.0f64;
        for &r in r_samples {
            let (rr, d1, d2) = self.radial_derivatives(r)?;
            let r2 = r * r;
            let terms = [
                d2,
                d1 / r,
                -gamma * gamma / r2 * rr,
                -2.0 * m * cfg.omega * r2 * rr,
                -2.0 * m * cfg.lambda * r2 * r2 * rr,
                -2.0 * m * cfg.eta * r2 * r2 * r2 * rr,
                b_level * rr,
            ];
            let sum: f64 = terms.iter().sum();
            let scale = terms.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
            if sum != 0.0 {
                worst = worst.max(sum.abs() / scale);
            }
        }
        Ok(worst)
    }

    pub fn export_samples(&self, grid: &RadialGrid) -> Result<Vec<SampleRow>> {
        grid.nodes()
            .map(|r| {
                let xi = xi_of_r(&self.config, r)?;
                let radial = self.radial_xi(xi)?;
                Ok(SampleRow {
                    r,
                    xi,
                    radial,
                    u: r.sqrt() * radial,
                })
            })
            .collect()
    }
}

/// Number of zeros of the polynomial on ξ > 0; these are the radial nodes.
fn positive_roots(poly: &[f64]) -> usize {
    let p = Polynomial::new(poly.to_vec());
    p.real_roots(1e-9).roots.iter().filter(|&&x| x > 0.0).count()
}

/// √(Σ (u_a − u_o)² h) after choosing the relative sign that minimizes it.
pub fn l2_discrepancy(samples: &[SampleRow], oracle_u: &[f64], spacing: f64) -> f64 {
    let dist = |sign: f64| {
        samples
            .iter()
            .zip(oracle_u)
            .map(|(s, &u)| (s.u - sign * u).powi(2))
            .sum::<f64>()
            * spacing
    };
    dist(1.0).min(dist(-1.0)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::{coefficients, HeunParams};
    use crate::quantization::ground_energies;
    use approx::assert_relative_eq;

    fn bench_solution() -> ExactSolution {
        let cfg = PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).unwrap();
        ground_energies(&cfg, &Channel::new(0, 0.0, 1).unwrap()).unwrap()
    }

    #[test]
    fn minus_branch_polynomial_and_nodes() {
        let st = assemble(&bench_solution(), 0).unwrap();
        let poly = st.heun.polynomial().unwrap();
        assert_eq!(poly.len(), 2);
        // f₁ = a/2 − b = 2 − (4 − √6)
        assert_relative_eq!(poly[1], 6f64.sqrt() - 2.0, max_relative = 1e-12);
        assert_eq!(st.node_count, 0);
        assert_eq!(st.branch, Branch::Minus);
    }

    #[test]
    fn plus_branch_has_one_node() {
        let st = assemble(&bench_solution(), 1).unwrap();
        assert_relative_eq!(st.heun.polynomial().unwrap()[1], -2.0 - 6f64.sqrt(), max_relative = 1e-12);
        assert_eq!(st.node_count, 1);
    }

    #[test]
    fn value_at_origin() {
        let st = assemble(&bench_solution(), 0).unwrap().normalize(400).unwrap();
        assert_eq!(st.radial(0.0).unwrap(), st.norm_constant);

        let cfg = PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.3).unwrap();
        let sol = ground_energies(&cfg, &Channel::new(1, 1.0, 1).unwrap()).unwrap();
        let st = assemble(&sol, 0).unwrap();
        assert_eq!(st.radial(0.0).unwrap(), 0.0);
    }

    #[test]
    fn normalization_converges_and_is_projective() {
        let st = assemble(&bench_solution(), 1).unwrap();
        let n1 = st.normalize(200).unwrap();
        let n2 = st.normalize(400).unwrap();
        assert_relative_eq!(n1.norm_constant, n2.norm_constant, max_relative = 1e-8);
        let tripled = st.with_norm_constant(3.0).normalize(400).unwrap();
        assert_eq!(tripled.norm_constant, n2.norm_constant);
        assert_relative_eq!(n2.norm_integral(800).unwrap(), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn gaussian_norm_closed_form() {
        // a = 0, |γ| = 0, H = 1: ∫ e^{−ξ²} dξ/(2s) = √π/(4s)
        let cfg = PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).unwrap();
        let ch = Channel::new(0, 0.0, 1).unwrap();
        let params = HeunParams::new(0.0, 0.0, 0.0, -2.0).unwrap();
        let heun = coefficients(params, 4).unwrap();
        let dims = DimensionlessSet {
            gamma: 0.0,
            a: 0.0,
            b: 0.0,
            c: -2.0,
        };
        let st = BoundState::new(cfg, ch, Branch::Root(0), 1.0, dims, heun).unwrap();
        let s = cfg.xi_scale();
        let exact = std::f64::consts::PI.sqrt() / (4.0 * s);
        assert_relative_eq!(st.norm_integral(400).unwrap(), exact, max_relative = 1e-10);
        assert_relative_eq!(st.normalize(400).unwrap().norm_constant, exact.sqrt().recip(), max_relative = 1e-10);
    }

    #[test]
    fn fractional_gamma_norm_converges() {
        let cfg = PhysicalConfig::new(0.8, 0.3, 0.0, 1.2, 0.35).unwrap();
        let sol = ground_energies(&cfg, &Channel::new(1, 1.0, 1).unwrap()).unwrap();
        let st = assemble(&sol, 0).unwrap();
        let a = st.norm_integral(200).unwrap();
        let b = st.norm_integral(400).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn radial_residuals() {
        let sol = bench_solution();
        let minus = assemble(&sol, 0).unwrap().normalize(400).unwrap();
        assert!(minus.radial_ode_residual(&[0.2, 0.7, 1.5]).unwrap() < 1e-8);

        let plus = assemble(&sol, 1).unwrap().normalize(400).unwrap();
        let xi_node = -1.0 / plus.heun.polynomial().unwrap()[1];
        let r_node = crate::params::r_of_xi(&plus.config, xi_node).unwrap();
        assert!(plus.radial(r_node).unwrap().abs() < 1e-12);
        assert!(plus.radial_ode_residual(&[r_node, 0.3, 1.1]).unwrap() < 1e-8);

        let mut off = minus.clone();
        off.energy += 1e-4;
        assert!(off.radial_ode_residual(&[0.2, 0.7, 1.5]).unwrap() > 1e-6);
        assert!(minus.radial_ode_residual(&[0.0]).is_err());
    }

    #[test]
    fn untruncated_series_rejected() {
        let sol = bench_solution();
        let mut d = sol.dimensionless(0).unwrap();
        d.b += 0.1;
        let heun = coefficients(HeunParams::from(&d), 12).unwrap();
        assert!(matches!(
            BoundState::new(sol.config, sol.channel, Branch::Minus, 1.0, d, heun),
            Err(Error::NotTruncated { .. })
        ));
        assert!(assemble(&sol, 2).is_err());
    }

    #[test]
    fn samples_follow_grid() {
        let st = assemble(&bench_solution(), 0).unwrap().normalize(400).unwrap();
        let grid = RadialGrid::new(st.r_cut, 200).unwrap();
        let rows = st.export_samples(&grid).unwrap();
        assert_eq!(rows.len(), 200);
        assert_eq!(rows[0].r, grid.node(0));
        assert_eq!(rows[0].xi, xi_of_r(&st.config, grid.node(0)).unwrap());
        assert!(rows.windows(2).all(|w| w[1].r > w[0].r));
        assert!(rows.iter().all(|s| s.radial > 0.0));
    }
}

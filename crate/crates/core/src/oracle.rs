//! Finite-difference eigensolver for the radial equation
//!
//! ```text
//! R'' + R'/r − γ²/r² R − 2m V(r) R + B R = 0,   B = 2mℰ − k².
//! ```
//!
//! Writing R = r^|γ| v gives the flux form −r^{−q}(r^q v')' + 2mV v = B v with
//! q = 2|γ| + 1, in which v is smooth at the origin for every |γ| ≥ 0. It is
//! discretized on the cell centres r_i = (i − ½)h, h = r_max/N, with the
//! fluxes evaluated at the faces r_{i±½} (the inner face r_½ = 0 carries no
//! flux). Scaling by r_i^{q/2} makes the matrix symmetric tridiagonal and
//! turns the unknown into u = √r·R. The scheme is second order in h,
//! including γ = 0 and non-integer γ, where the plain Dirichlet discretization
//! of the (γ² − ¼)/r² form converges only logarithmically.
//!
//! Nothing here touches the Heun machinery.

use crate::error::{domain, Error, Result};
use crate::params::PhysicalConfig;
use crate::tridiag::SymTridiagonal;

pub const MIN_POINTS: usize = 100;

/// WKB decay exponent ∫√(W − B) dr required past the outer turning point.
pub const DECAY_EXPONENT: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    num_points: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, num_points: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(domain("r_max", format!("must be finite and > 0, got {r_max}")));
        }
        if num_points < MIN_POINTS {
            return Err(domain(
                "grid_points",
                format!("need at least {MIN_POINTS} points, got {num_points}"),
            ));
        }
        Ok(Self { r_max, num_points })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / self.num_points as f64
    }

    /// r_i = (i − ½)h, i = 1…N.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.num_points).map(|i| self.node(i))
    }

    /// Same box, half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            num_points: 2 * self.num_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    /// Ascending energies ℰ.
    pub eigenvalues: Vec<f64>,
    pub gamma_abs: f64,
    pub k: f64,
    pub grid: RadialGrid,
    /// (4 ℰ_{h/2} − ℰ_h)/3 per level when a refined grid was also solved.
    pub richardson_estimate: Option<Vec<f64>>,
}

impl OracleSpectrum {
    /// Level closest to `energy`, as (index, eigenvalue).
    pub fn nearest(&self, energy: f64) -> Option<(usize, f64)> {
        self.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| (a.1 - energy).abs().total_cmp(&(b.1 - energy).abs()))
    }
}

fn check_inputs(cfg: &PhysicalConfig, gamma_abs: f64, k: f64) -> Result<()> {
    if !(cfg.mass.is_finite() && cfg.mass > 0.0) {
        return Err(domain("mass", "must be finite and > 0"));
    }
    if ![cfg.omega, cfg.lambda, cfg.eta].iter().all(|x| x.is_finite()) || cfg.eta < 0.0 {
        return Err(domain("potential", "coefficients must be finite with eta >= 0"));
    }
    if !(gamma_abs.is_finite() && gamma_abs >= 0.0) {
        return Err(domain("gamma_abs", "must be finite and >= 0"));
    }
    if !k.is_finite() {
        return Err(domain("k", "must be finite"));
    }
    Ok(())
}

/// γ²/r² + 2mV(r).
pub fn effective_potential(cfg: &PhysicalConfig, gamma_abs: f64, r: f64) -> f64 {
    gamma_abs * gamma_abs / (r * r) + 2.0 * cfg.mass * cfg.potential(r)
}

/// The symmetric tridiagonal matrix whose eigenvalues approximate B.
pub fn radial_matrix(cfg: &PhysicalConfig, gamma_abs: f64, grid: &RadialGrid) -> Result<SymTridiagonal> {
    let n = grid.num_points();
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let q = 2.0 * gamma_abs + 1.0;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for i in 0..n {
        let r = grid.node(i);
        let outer = ((r + 0.5 * h) / r).powf(q);
        let inner = if i == 0 { 0.0 } else { ((r - 0.5 * h) / r).powf(q) };
        diag.push((outer + inner) * inv_h2 + 2.0 * cfg.mass * cfg.potential(r));
        if i + 1 < n {
            let face = r + 0.5 * h;
            let ratio = face * face / (r * (r + h));
            off.push(-ratio.powf(0.5 * q) * inv_h2);
        }
    }
    SymTridiagonal::new(diag, off)
}

fn to_energy(cfg: &PhysicalConfig, k: f64, b: f64) -> f64 {
    (b + k * k) / (2.0 * cfg.mass)
}

fn check_box(cfg: &PhysicalConfig, gamma_abs: f64, grid: &RadialGrid, top_b: f64) -> Result<()> {
    let w = effective_potential(cfg, gamma_abs, grid.r_max());
    if w < top_b {
        return Err(Error::BoxTooSmall {
            r_max: grid.r_max(),
            potential: w,
            level: top_b,
        });
    }
    Ok(())
}

/// Lowest `num_levels` energies of the channel (|γ|, k).
pub fn spectrum(
    cfg: &PhysicalConfig,
    gamma_abs: f64,
    k: f64,
    num_levels: usize,
    grid: &RadialGrid,
) -> Result<OracleSpectrum> {
    check_inputs(cfg, gamma_abs, k)?;
    if num_levels == 0 || num_levels > grid.num_points() {
        return Err(Error::Usage(format!(
            "num_levels must be in 1..={}, got {num_levels}",
            grid.num_points()
        )));
    }
    let t = radial_matrix(cfg, gamma_abs, grid)?;
    let bs = t.lowest(num_levels)?;
    check_box(cfg, gamma_abs, grid, *bs.last().unwrap())?;
    Ok(OracleSpectrum {
        eigenvalues: bs.iter().map(|&b| to_energy(cfg, k, b)).collect(),
        gamma_abs,
        k,
        grid: *grid,
        richardson_estimate: None,
    })
}

/// Every level with energy below `energy_max`, plus the first one above it.
pub fn spectrum_through(
    cfg: &PhysicalConfig,
    gamma_abs: f64,
    k: f64,
    energy_max: f64,
    grid: &RadialGrid,
) -> Result<OracleSpectrum> {
    check_inputs(cfg, gamma_abs, k)?;
    let t = radial_matrix(cfg, gamma_abs, grid)?;
    let b_max = 2.0 * cfg.mass * energy_max - k * k;
    let count = (t.count_below(b_max) + 1).min(grid.num_points());
    spectrum(cfg, gamma_abs, k, count, grid)
}

/// Spectrum on `grid` and on its refinement, with the Richardson estimate.
pub fn spectrum_with_richardson(
    cfg: &PhysicalConfig,
    gamma_abs: f64,
    k: f64,
    num_levels: usize,
    grid: &RadialGrid,
) -> Result<OracleSpectrum> {
    let fine = spectrum(cfg, gamma_abs, k, num_levels, &grid.refined())?;
    let mut coarse = spectrum(cfg, gamma_abs, k, num_levels, grid)?;
    coarse.richardson_estimate = Some(
        coarse
            .eigenvalues
            .iter()
            .zip(&fine.eigenvalues)
            .map(|(c, f)| (4.0 * f - c) / 3.0)
            .collect(),
    );
    Ok(coarse)
}

/// Energy of `level` and its eigenvector u_i ≈ √r_i R(r_i), normalized so
/// that Σ u_i² h = 1, positive near the origin.
pub fn eigenvector(
    cfg: &PhysicalConfig,
    gamma_abs: f64,
    k: f64,
    level: usize,
    grid: &RadialGrid,
) -> Result<(f64, Vec<f64>)> {
    check_inputs(cfg, gamma_abs, k)?;
    let t = radial_matrix(cfg, gamma_abs, grid)?;
    let b = t.eigenvalue(level)?;
    check_box(cfg, gamma_abs, grid, b)?;
    let mut u = t.eigenvector(b)?;
    let scale = 1.0 / grid.spacing().sqrt();
    u.iter_mut().for_each(|x| *x *= scale);
    Ok((to_energy(cfg, k, b), u))
}

/// Box size: outer turning point of W(r) = B plus the distance over which the
/// WKB exponent ∫√(W − B) dr reaches [`DECAY_EXPONENT`].
pub fn default_r_max(cfg: &PhysicalConfig, gamma_abs: f64, b_est: f64) -> Result<f64> {
    check_inputs(cfg, gamma_abs, 0.0)?;
    if !b_est.is_finite() {
        return Err(domain("b_est", "must be finite"));
    }
    let w = |r: f64| effective_potential(cfg, gamma_abs, r) - b_est;
    let mut far = 1.0;
    let mut grown = 0;
    while !(w(far) > 1.0 && w(2.0 * far) > w(far)) {
        far *= 2.0;
        grown += 1;
        if grown > 60 {
            return Err(domain("potential", "not confining: no outer turning point"));
        }
    }
    // last crossing below `far`
    let steps = 4096;
    let dr = far / steps as f64;
    let mut turning = 0.0;
    for i in (1..=steps).rev() {
        let r = i as f64 * dr;
        if w(r) < 0.0 {
            turning = r;
            break;
        }
    }
    let step = far / 20_000.0;
    let mut r = turning;
    let mut exponent = 0.0;
    let mut prev = w(r.max(step)).max(0.0).sqrt();
    while exponent < DECAY_EXPONENT {
        let next = w(r + step).max(0.0).sqrt();
        exponent += 0.5 * (prev + next) * step;
        prev = next;
        r += step;
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub num_points: usize,
    pub spacing: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub gamma_abs: f64,
    pub level: usize,
    pub rows: Vec<ConvergenceRow>,
    /// Observed orders between successive grids.
    pub orders: Vec<f64>,
    /// Richardson extrapolation from the two finest grids.
    pub richardson: f64,
    /// C in |ℰ_h − ℰ| ≈ C h², from the two finest grids.
    pub error_constant: f64,
}

impl ConvergenceStudy {
    pub fn observed_order(&self) -> Option<f64> {
        self.orders.last().copied()
    }

    /// Second order is only guaranteed (and checked) for |γ| ≥ 1.
    pub fn order_as_expected(&self) -> Option<bool> {
        if self.gamma_abs < 1.0 {
            return None;
        }
        self.observed_order().map(|p| (1.5..=2.5).contains(&p))
    }

    pub fn error_bound(&self, spacing: f64) -> f64 {
        self.error_constant * spacing * spacing
    }
}

/// Eigenvalue `level` on a sequence of grids with halving spacing. The
/// observed order uses `reference` when given, otherwise successive
/// differences (which needs at least three grids).
pub fn convergence_study(
    cfg: &PhysicalConfig,
    gamma_abs: f64,
    k: f64,
    level: usize,
    grids: &[RadialGrid],
    reference: Option<f64>,
) -> Result<ConvergenceStudy> {
    if grids.len() < 2 {
        return Err(Error::Usage("convergence study needs at least two grids".into()));
    }
    for pair in grids.windows(2) {
        let ratio = pair[0].spacing() / pair[1].spacing();
        if (ratio - 2.0).abs() > 0.02 {
            return Err(Error::Usage(format!(
                "grids must halve the spacing successively (got ratio {ratio:.4})"
            )));
        }
    }
    let rows = grids
        .iter()
        .map(|g| {
            let s = spectrum(cfg, gamma_abs, k, level + 1, g)?;
            Ok(ConvergenceRow {
                num_points: g.num_points(),
                spacing: g.spacing(),
                energy: s.eigenvalues[level],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let e: Vec<f64> = rows.iter().map(|r| r.energy).collect();
    let orders = match reference {
        Some(exact) => e.windows(2).map(|w| ((w[0] - exact).abs() / (w[1] - exact).abs()).log2()).collect(),
        None => e
            .windows(3)
            .map(|w| ((w[0] - w[1]).abs() / (w[1] - w[2]).abs()).log2())
            .collect(),
    };
    let n = rows.len();
    let (coarse, fine) = (rows[n - 2], rows[n - 1]);
    Ok(ConvergenceStudy {
        gamma_abs,
        level,
        richardson: (4.0 * fine.energy - coarse.energy) / 3.0,
        error_constant: (coarse.energy - fine.energy).abs()
            / (coarse.spacing * coarse.spacing - fine.spacing * fine.spacing),
        orders,
        rows,
    })
}

//! Quasi-exact quantization: the coupling constraint on λ and the allowed
//! energies for which the Heun series collapses to a polynomial.
//!
//! Two conditions must hold at once for a degree-n polynomial:
//! Λ = a²/4 − c − 2 − |γ| = 2n fixes λ, and f_{n+1}(b) = 0 fixes the energy.
//! f_{n+1} is a degree-(n+1) polynomial in b. Its roots are the eigenvalues
//! of a tridiagonal matrix whose off-diagonal products
//! (j+1)(j+1+|γ|)(2n − 2j) are positive, so all n+1 of them are real and
//! simple; the solver still counts what it finds rather than assuming it.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::heun::{coefficients, HeunCoefficientSequence, HeunParams};
use crate::params::{b_of_energy, energy_of_b, to_dimensionless, Channel, DimensionlessSet, PhysicalConfig};
use crate::poly::{polish_root, Polynomial};

/// Label of an energy root. The two n = 1 roots are `minus`/`plus` after the
/// sign in front of the square root of the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
    Root(usize),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Minus => f.write_str("minus"),
            Branch::Plus => f.write_str("plus"),
            Branch::Root(i) => write!(f, "root{i}"),
        }
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Branch::Minus),
            "plus" | "+" => Ok(Branch::Plus),
            _ => s
                .strip_prefix("root")
                .and_then(|i| i.parse().ok())
                .map(Branch::Root)
                .ok_or_else(|| Error::Usage(format!("unknown branch label `{s}` (expected minus, plus or rootN)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub channel: Channel,
    /// Configuration with `lambda` set to the coupling actually used.
    pub config: PhysicalConfig,
    pub gamma: f64,
    pub lambda_nl: f64,
    /// Ascending.
    pub energy_roots: Vec<f64>,
    pub b_roots: Vec<f64>,
    pub branch_labels: Vec<Branch>,
    /// Roots of f_{n+1}(b) the companion matrix placed off the real axis.
    pub complex_root_count: usize,
}

impl ExactSolution {
    pub fn expected_root_count(&self) -> usize {
        self.channel.n as usize + 1
    }

    pub fn root_index(&self, branch: Branch) -> Result<usize> {
        self.branch_labels
            .iter()
            .position(|&b| b == branch)
            .ok_or_else(|| Error::Usage(format!("branch `{branch}` not present in this solution")))
    }

    pub fn dimensionless(&self, index: usize) -> Result<DimensionlessSet> {
        let e = self.energy(index)?;
        let mut d = to_dimensionless(&self.config, &self.channel, e)?;
        d.b = self.b_roots[index];
        Ok(d)
    }

    pub fn energy(&self, index: usize) -> Result<f64> {
        self.energy_roots.get(index).copied().ok_or(Error::RootIndex {
            index,
            count: self.energy_roots.len(),
        })
    }

    /// Heun coefficients f₀…f_{n+extra} at the given root.
    pub fn heun(&self, index: usize, extra: usize) -> Result<HeunCoefficientSequence> {
        let d = self.dimensionless(index)?;
        coefficients(HeunParams::from(&d), self.channel.n as usize + extra.max(2))
    }
}

/// λ_{n,l} = sqrt((2mη)^{3/2}(4 + 2|γ| + 4n)/m² + 4ωη), the coupling that makes Λ = 2n.
pub fn lambda_constraint(cfg: &PhysicalConfig, ch: &Channel) -> Result<f64> {
    cfg.validate()?;
    ch.validate()?;
    let g = ch.gamma(cfg.chi).abs();
    let m = cfg.mass;
    let arg = cfg.two_m_eta().powf(1.5) * (4.0 + 2.0 * g + 4.0 * ch.n as f64) / (m * m)
        + 4.0 * cfg.omega * cfg.eta;
    if !(arg > 0.0) {
        return Err(domain("lambda", format!("constraint argument {arg} is not positive")));
    }
    Ok(arg.sqrt())
}

/// B² − P·B + Q = 0 in B = 2mℰ − k², the n = 1 energy condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyQuadratic {
    pub p: f64,
    pub q: f64,
}

impl EnergyQuadratic {
    pub fn new(cfg: &PhysicalConfig, gamma_abs: f64) -> Self {
        let m = cfg.mass;
        let lam = cfg.lambda;
        let g = gamma_abs;
        let root = cfg.two_m_eta().sqrt();
        Self {
            p: 4.0 * m * lam * (2.0 + g) / root,
            q: 2.0 * m * lam * lam * (3.0 + g) * (1.0 + g) / cfg.eta - 16.0 * (1.0 + g) * root,
        }
    }

    pub fn discriminant(&self) -> f64 {
        self.p * self.p - 4.0 * self.q
    }

    /// Real roots ascending, larger-magnitude root first then Vieta.
    pub fn roots(&self) -> Option<[f64; 2]> {
        let disc = self.discriminant();
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        let big = 0.5 * (self.p + self.p.signum() * sq);
        if big == 0.0 {
            return Some([0.0, 0.0]);
        }
        let other = self.q / big;
        Some(if big < other { [big, other] } else { [other, big] })
    }
}

pub fn ground_energies(cfg: &PhysicalConfig, ch: &Channel) -> Result<ExactSolution> {
    if ch.n != 1 {
        return Err(Error::Usage(format!("ground_energies needs n = 1, got n = {}", ch.n)));
    }
    let lambda = lambda_constraint(cfg, ch)?;
    let cfg = cfg.with_lambda(lambda);
    let gamma = ch.gamma(cfg.chi);
    let quad = EnergyQuadratic::new(&cfg, gamma.abs());
    // the discriminant reduces to 8mλ²/η + 64(1+|γ|)√(2mη) > 0
    let roots = quad
        .roots()
        .ok_or_else(|| Error::Eigensolver("negative discriminant in the n = 1 quadratic".into()))?;
    let energy_roots: Vec<f64> = roots.iter().map(|b| (b + ch.k * ch.k) / (2.0 * cfg.mass)).collect();
    let b_roots = energy_roots.iter().map(|&e| b_of_energy(&cfg, ch.k, e)).collect();
    Ok(ExactSolution {
        channel: *ch,
        config: cfg,
        gamma,
        lambda_nl: lambda,
        energy_roots,
        b_roots,
        branch_labels: vec![Branch::Minus, Branch::Plus],
        complex_root_count: 0,
    })
}

/// The n = 1 closed form, split into its pieces, in both the literal
/// textbook form and the dimensionally consistent one.
///
/// The commonly printed first term `(2+|γ|)/√(2mη) · √(4m²ωη + (2mη)^{3/2}(8+2|γ|))`
/// is m times the midpoint P/(4m) of the quadratic's roots; dividing by m
/// restores agreement. The ± term is correct as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub first_term_printed: f64,
    pub first_term_corrected: f64,
    pub half_gap: f64,
    pub kinetic: f64,
}

impl ClosedForm {
    pub fn corrected_roots(&self) -> [f64; 2] {
        let mid = self.first_term_corrected + self.kinetic;
        [mid - self.half_gap, mid + self.half_gap]
    }

    pub fn printed_roots(&self) -> [f64; 2] {
        let mid = self.first_term_printed + self.kinetic;
        [mid - self.half_gap, mid + self.half_gap]
    }

    /// printed / corrected first term; equals the mass.
    pub fn first_term_ratio(&self) -> f64 {
        self.first_term_printed / self.first_term_corrected
    }
}

pub fn closed_form(cfg: &PhysicalConfig, ch: &Channel) -> Result<ClosedForm> {
    cfg.validate()?;
    ch.validate()?;
    let g = ch.gamma(cfg.chi).abs();
    let m = cfg.mass;
    let tme = cfg.two_m_eta();
    let (omega, eta) = (cfg.omega, cfg.eta);
    let first = (2.0 + g) / tme.sqrt() * (4.0 * m * m * omega * eta + tme.powf(1.5) * (8.0 + 2.0 * g)).sqrt();
    let half_gap = (tme.powf(3.5) * (12.0 + 6.0 * g) + 16.0 * m.powi(4) * omega * eta.powi(3)).sqrt()
        / (m * tme.powf(1.5));
    Ok(ClosedForm {
        first_term_printed: first,
        first_term_corrected: first / m,
        half_gap,
        kinetic: ch.k * ch.k / (2.0 * m),
    })
}

/// f_{n+1} as a polynomial in b, built by carrying b through the recurrence
/// as an indeterminate.
pub fn termination_polynomial(gamma_abs: f64, a: f64, c: f64, n: u32) -> Polynomial {
    let p = HeunParams {
        gamma_abs,
        a,
        b: 0.0,
        c,
    };
    let lam = p.lambda_term();
    let beta0 = p.beta0();
    let g = gamma_abs;
    let mut prev = Polynomial::constant(1.0);
    let mut cur = Polynomial::new(vec![beta0 / (1.0 + g), -1.0 / (1.0 + g)]);
    for j in 1..=n as usize {
        let jf = j as f64;
        let denom = (jf + 1.0) * (jf + 1.0 + g);
        let next = cur
            .mul_linear(a * jf + beta0, -1.0)
            .combine(1.0 / denom, &prev, -(lam - 2.0 * (jf - 1.0)) / denom);
        prev = cur;
        cur = next;
    }
    cur
}

/// f_{n+1}(b) and ∂f_{n+1}/∂b evaluated numerically through the recurrence.
pub fn termination_value(params: &HeunParams, n: u32) -> (f64, f64) {
    let g = params.gamma_abs;
    let lam = params.lambda_term();
    let beta = params.beta0() - params.b;
    let (mut f_prev, mut d_prev) = (1.0, 0.0);
    let (mut f, mut d) = (beta / (1.0 + g), -1.0 / (1.0 + g));
    for j in 1..=n as usize {
        let jf = j as f64;
        let denom = (jf + 1.0) * (jf + 1.0 + g);
        let lj = lam - 2.0 * (jf - 1.0);
        let coef = params.a * jf + beta;
        let f_next = (coef * f - lj * f_prev) / denom;
        let d_next = (coef * d - f - lj * d_prev) / denom;
        f_prev = f;
        d_prev = d;
        f = f_next;
        d = d_next;
    }
    (f, d)
}

/// All real roots of f_{n+1}(b) = 0 at the constrained coupling λ_{n,l}.
pub fn energy_roots_general(cfg: &PhysicalConfig, ch: &Channel) -> Result<ExactSolution> {
    let lambda = lambda_constraint(cfg, ch)?;
    solve_with_lambda(cfg, ch, lambda)
}

/// Same as [`energy_roots_general`] but at an arbitrary coupling. When λ is
/// not λ_{n,l} the roots annihilate f_{n+1} but the series does not stop.
pub fn solve_with_lambda(cfg: &PhysicalConfig, ch: &Channel, lambda: f64) -> Result<ExactSolution> {
    let cfg = cfg.with_lambda(lambda);
    cfg.validate()?;
    ch.validate()?;
    let d = to_dimensionless(&cfg, ch, 0.0)?;
    let g = d.gamma_abs();
    let poly = termination_polynomial(g, d.a, d.c, ch.n);
    let found = poly.real_roots(1e-7);
    let mut b_roots: Vec<f64> = found
        .roots
        .iter()
        .map(|&b0| {
            polish_root(
                b0,
                |b| termination_value(&HeunParams { gamma_abs: g, a: d.a, b, c: d.c }, ch.n),
                50,
            )
        })
        .collect();
    b_roots.sort_by(|x, y| x.total_cmp(y));
    let energy_roots = b_roots.iter().map(|&b| energy_of_b(&cfg, ch.k, b)).collect();
    let branch_labels = if ch.n == 1 && b_roots.len() == 2 {
        vec![Branch::Minus, Branch::Plus]
    } else {
        (0..b_roots.len()).map(Branch::Root).collect()
    };
    Ok(ExactSolution {
        channel: *ch,
        config: cfg,
        gamma: d.gamma,
        lambda_nl: lambda,
        energy_roots,
        b_roots,
        branch_labels,
        complex_root_count: found.complex_count,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyRow {
    pub l: i64,
    pub gamma: f64,
    pub lambda_nl: f64,
    pub energies: Vec<f64>,
    pub branches: Vec<Branch>,
}

pub fn degeneracy_report(
    cfg: &PhysicalConfig,
    k: f64,
    l_range: RangeInclusive<i64>,
    n: u32,
) -> Result<Vec<DegeneracyRow>> {
    l_range
        .map(|l| {
            let ch = Channel::new(l, k, n)?;
            let sol = energy_roots_general(cfg, &ch)?;
            Ok(DegeneracyRow {
                l,
                gamma: sol.gamma,
                lambda_nl: sol.lambda_nl,
                energies: sol.energy_roots,
                branches: sol.branch_labels,
            })
        })
        .collect()
}

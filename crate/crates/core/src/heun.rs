//! Power-series solutions of the biconfluent Heun equation
//!
//! ```text
//! H'' + [(|γ|+1)/ξ − a − 2ξ] H' + [Λ − (a(|γ|+1) − 2b)/(2ξ)] H = 0,
//! Λ = a²/4 − c − 2 − |γ|.
//! ```
//!
//! Substituting H = Σ f_j ξ^j and collecting powers gives the three-term
//! recurrence
//!
//! ```text
//! (j+1)(j+1+|γ|) f_{j+1} = [a j + a(|γ|+1)/2 − b] f_j − [Λ − 2(j−1)] f_{j−1},
//! ```
//!
//! with f₋₁ = 0 and f₀ = 1. The `−b` inside the bracket is required for the
//! n = 1 termination condition to reproduce the quadratic energy condition;
//! a frequently quoted form of this recurrence drops it. The term-by-term
//! substitution is written out in `docs/derivation.md`.
//!
//! When Λ = 2n the coefficient of f_{n} in the equation for f_{n+2} vanishes,
//! so f_{n+1} = 0 forces every later coefficient to zero and H is a
//! polynomial of degree n.

use crate::error::{domain, Error, Result};
use crate::params::DimensionlessSet;

/// Relative size below which a coefficient counts as zero for truncation.
pub const TRUNCATION_TOL: f64 = 1e-10;

/// Relative tolerance on Λ = 2n for a detected stop at n.
pub const LAMBDA_MATCH_TOL: f64 = 1e-9;

/// Relative size of the last retained term for a summed series to count as converged.
pub const SERIES_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub gamma_abs: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HeunParams {
    pub fn new(gamma_abs: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        if !(gamma_abs >= 0.0) || !gamma_abs.is_finite() {
            return Err(domain("gamma_abs", format!("must be finite and >= 0, got {gamma_abs}")));
        }
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(domain("a/b/c", "must be finite"));
        }
        Ok(Self { gamma_abs, a, b, c })
    }

    /// Λ = a²/4 − c − 2 − |γ|.
    pub fn lambda_term(&self) -> f64 {
        self.a * self.a / 4.0 - self.c - 2.0 - self.gamma_abs
    }

    /// The b-independent part a(|γ|+1)/2 of the f_j coefficient.
    pub(crate) fn beta0(&self) -> f64 {
        0.5 * self.a * (self.gamma_abs + 1.0)
    }
}

impl From<&DimensionlessSet> for HeunParams {
    fn from(d: &DimensionlessSet) -> Self {
        Self {
            gamma_abs: d.gamma_abs(),
            a: d.a,
            b: d.b,
            c: d.c,
        }
    }
}

/// Coefficients f₀…f_K with optional polynomial truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunCoefficientSequence {
    params: HeunParams,
    coeffs: Vec<f64>,
    truncation_index: Option<usize>,
}

/// Value of the Heun ODE left-hand side together with the magnitude of its
/// largest single term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeResidual {
    pub value: f64,
    pub scale: f64,
}

impl OdeResidual {
    pub fn relative(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// Runs the recurrence up to f_K (`k_max` = K ≥ 2).
pub fn coefficients(params: HeunParams, k_max: usize) -> Result<HeunCoefficientSequence> {
    if k_max < 2 {
        return Err(Error::Usage(format!("need at least f0..f2, got K = {k_max}")));
    }
    let g = params.gamma_abs;
    let lam = params.lambda_term();
    let beta = params.beta0() - params.b;
    let mut coeffs = Vec::with_capacity(k_max + 1);
    coeffs.push(1.0);
    coeffs.push(beta / (1.0 + g));
    for j in 1..k_max {
        let jf = j as f64;
        let next = ((params.a * jf + beta) * coeffs[j] - (lam - 2.0 * (jf - 1.0)) * coeffs[j - 1])
            / ((jf + 1.0) * (jf + 1.0 + g));
        coeffs.push(next);
    }
    let truncation_index = detect_truncation(&coeffs, Some(lam));
    Ok(HeunCoefficientSequence {
        params,
        coeffs,
        truncation_index,
    })
}

impl HeunCoefficientSequence {
    /// Wraps an explicit coefficient list; truncation is re-detected from
    /// the coefficients alone.
    pub fn from_coefficients(params: HeunParams, coeffs: Vec<f64>) -> Self {
        let truncation_index = detect_truncation(&coeffs, None);
        Self {
            params,
            coeffs,
            truncation_index,
        }
    }

    pub fn params(&self) -> &HeunParams {
        &self.params
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn truncation_index(&self) -> Option<usize> {
        self.truncation_index
    }

    /// Polynomial coefficients f₀…f_n when the series truncates.
    pub fn polynomial(&self) -> Option<&[f64]> {
        self.truncation_index.map(|n| &self.coeffs[..=n])
    }

    /// max |f_j| for j > n, relative to max |f₀…f_n|.
    pub fn tail_ratio(&self, n: usize) -> f64 {
        let head = max_abs(&self.coeffs[..=n.min(self.coeffs.len() - 1)]);
        let tail = self.coeffs.get(n + 1..).map(max_abs).unwrap_or(0.0);
        tail / head
    }

    /// Σ f_j ξ^j in ascending order.
    pub fn evaluate(&self, xi: f64) -> Result<f64> {
        self.derivatives(xi).map(|(h, _, _)| h)
    }

    /// (H, H', H'') summed term by term.
    pub fn derivatives(&self, xi: f64) -> Result<(f64, f64, f64)> {
        self.sums(xi).map(|(v, _)| (v[0], v[1], v[2]))
    }

    // Signed sums and the same sums over |f_j ξ^j|.
    fn sums(&self, xi: f64) -> Result<([f64; 3], [f64; 3])> {
        if !(xi >= 0.0) {
            return Err(domain("xi", format!("must be >= 0, got {xi}")));
        }
        let terms = match self.truncation_index {
            Some(n) => &self.coeffs[..=n],
            None => &self.coeffs[..],
        };
        let mut val = [0.0; 3];
        let mut abs = [0.0; 3];
        // powers ξ^{j−2}, ξ^{j−1}, ξ^j
        let (mut pm2, mut pm1, mut p) = (0.0, 0.0, 1.0);
        let mut last = 0.0;
        let mut quiet = 0;
        for (j, &f) in terms.iter().enumerate() {
            let jf = j as f64;
            last = f * p;
            let t = [last, jf * f * pm1, jf * (jf - 1.0) * f * pm2];
            for i in 0..3 {
                val[i] += t[i];
                abs[i] += t[i].abs();
            }
            // stop before ξ^j overflows once the tail is below rounding
            if (0..3).all(|i| t[i].abs() <= 1e-20 * abs[i]) {
                quiet += 1;
                if quiet == 4 {
                    break;
                }
            } else {
                quiet = 0;
            }
            pm2 = pm1;
            pm1 = p;
            p *= xi;
        }
        if self.truncation_index.is_none() && last.abs() > SERIES_TOL * val[0].abs() {
            return Err(Error::NotConverged {
                xi,
                last_term: last,
                sum: val[0],
            });
        }
        Ok((val, abs))
    }

    /// Left-hand side of the Heun ODE with analytic H′, H″. The scale is the
    /// largest of the six ODE terms evaluated with |f_j| in place of f_j,
    /// which bounds the rounding error of the sums.
    pub fn ode_residual(&self, xi: f64) -> Result<OdeResidual> {
        if !(xi > 0.0) {
            return Err(domain("xi", "the Heun ODE is singular at xi = 0"));
        }
        let ([h, h1, h2], [ah, ah1, ah2]) = self.sums(xi)?;
        let p = &self.params;
        let g = p.gamma_abs;
        let factors = [
            1.0,
            (g + 1.0) / xi,
            -p.a,
            -2.0 * xi,
            p.lambda_term(),
            -(p.a * (g + 1.0) - 2.0 * p.b) / (2.0 * xi),
        ];
        let signed = [h2, h1, h1, h1, h, h];
        let unsigned = [ah2, ah1, ah1, ah1, ah, ah];
        Ok(OdeResidual {
            value: factors.iter().zip(signed).map(|(f, x)| f * x).sum(),
            scale: factors
                .iter()
                .zip(unsigned)
                .fold(0.0f64, |acc, (f, x)| acc.max((f * x).abs())),
        })
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

// Two consecutive near-zero coefficients are required, and the stop at n
// must be structural (Λ = 2n); a decaying non-polynomial series also has
// runs of tiny coefficients.
fn detect_truncation(coeffs: &[f64], lambda_term: Option<f64>) -> Option<usize> {
    let mut head = 0.0f64;
    for n in 0..coeffs.len().saturating_sub(2) {
        head = head.max(coeffs[n].abs());
        let lim = TRUNCATION_TOL * head;
        if coeffs[n + 1].abs() < lim && coeffs[n + 2].abs() < lim {
            let structural = lambda_term
                .is_none_or(|lam| (lam - 2.0 * n as f64).abs() <= LAMBDA_MATCH_TOL * lam.abs().max(1.0));
            return structural.then_some(n);
        }
    }
    None
}

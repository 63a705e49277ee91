//! Dense real polynomials in ascending-power form and their real roots.

use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(0.0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| j as f64 * c)
                .collect(),
        )
    }

    /// self · (c0 + c1 x)
    pub fn mul_linear(&self, c0: f64, c1: f64) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j] += c0 * c;
            out[j + 1] += c1 * c;
        }
        Self::new(out)
    }

    /// self·s + other·t
    pub fn combine(&self, s: f64, other: &Self, t: f64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|j| {
                    s * self.coeffs.get(j).copied().unwrap_or(0.0)
                        + t * other.coeffs.get(j).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    /// All roots as eigenvalues of the companion matrix, `(re, im)` pairs.
    pub fn roots(&self) -> Vec<(f64, f64)> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d];
        if d == 1 {
            return vec![(-self.coeffs[0] / lead, 0.0)];
        }
        let mut comp = DMatrix::<f64>::zeros(d, d);
        for i in 1..d {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..d {
            comp[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        comp.complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect()
    }

    /// Real roots, ascending. Eigenvalues whose imaginary part is below
    /// `imag_tol · max(1, |z|)` count as real; the rest are reported only by
    /// count.
    pub fn real_roots(&self, imag_tol: f64) -> RealRoots {
        let all = self.roots();
        let mut real: Vec<f64> = all
            .iter()
            .filter(|(re, im)| im.abs() <= imag_tol * re.abs().max(1.0))
            .map(|&(re, _)| re)
            .collect();
        real.sort_by(|a, b| a.total_cmp(b));
        RealRoots {
            complex_count: all.len() - real.len(),
            roots: real,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealRoots {
    pub roots: Vec<f64>,
    pub complex_count: usize,
}

/// Newton polishing of a simple root with a caller-supplied (f, f') pair.
pub fn polish_root(mut x: f64, mut f: impl FnMut(f64) -> (f64, f64), max_iter: usize) -> f64 {
    for _ in 0..max_iter {
        let (v, dv) = f(x);
        if v == 0.0 || dv == 0.0 || !dv.is_finite() {
            break;
        }
        let step = v / dv;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_roots() {
        // (x − 1)(x − 3)
        let p = Polynomial::new(vec![3.0, -4.0, 1.0]);
        let r = p.real_roots(1e-9);
        assert_eq!(r.complex_count, 0);
        assert_relative_eq!(r.roots[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(r.roots[1], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn complex_pair_counted() {
        // (x² + 1)(x − 2)
        let p = Polynomial::new(vec![-2.0, 1.0, -2.0, 1.0]);
        let r = p.real_roots(1e-9);
        assert_eq!(r.complex_count, 2);
        assert_eq!(r.roots.len(), 1);
        assert_relative_eq!(r.roots[0], 2.0, max_relative = 1e-12);
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::constant(2.0).mul_linear(1.0, 3.0); // 2 + 6x
        assert_eq!(p.coeffs(), &[2.0, 6.0]);
        let q = p.combine(1.0, &Polynomial::new(vec![0.0, 0.0, 1.0]), 2.0);
        assert_eq!(q.coeffs(), &[2.0, 6.0, 2.0]);
        assert_eq!(q.derivative().coeffs(), &[6.0, 4.0]);
        assert_eq!(q.eval(2.0), 22.0);
        assert_eq!(Polynomial::new(vec![1.0, 0.0, 0.0]).degree(), 0);
    }

    #[test]
    fn newton_polish() {
        let x = polish_root(1.4, |x| (x * x - 2.0, 2.0 * x), 50);
        assert_relative_eq!(x, 2f64.sqrt(), max_relative = 1e-15);
    }
}

//! Sparse multivariate polynomials with complex coefficients.

use std::collections::BTreeMap;

use crate::linalg::{CVec, C64};

/// Exponent vector of a monomial.
pub type MultiIndex = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C64::new(1.0, 0.0))
    }

    /// The coordinate function `x_k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[k] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(alpha, C64::new(1.0, 0.0));
        p
    }

    /// `sum_k coeffs_k x_k + c0`.
    pub fn linear(coeffs: &CVec, c0: C64) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::constant(nvars, c0);
        for (k, &ck) in coeffs.iter().enumerate() {
            let mut alpha = vec![0; nvars];
            alpha[k] = 1;
            p.add_term(alpha, ck);
        }
        p
    }

    pub fn monomial(alpha: MultiIndex, c: C64) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> C64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| *c == C64::new(0.0, 0.0))
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: C64) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c == C64::new(0.0, 0.0) {
            return;
        }
        *self.terms.entry(alpha).or_default() += c;
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|a| a.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let ab = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(ab, ca * cb);
            }
        }
        out
    }

    /// Partial derivative in variable `k`.
    pub fn derivative(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            if a[k] > 0 {
                let mut b = a.clone();
                b[k] -= 1;
                out.add_term(b, c * a[k] as f64);
            }
        }
        out
    }

    /// `sum_k w_k d/dx_k`.
    pub fn directional_derivative(&self, w: &CVec) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (k, wk) in w.iter().enumerate() {
            if *wk != C64::new(0.0, 0.0) {
                out = out.add(&self.derivative(k).scale(*wk));
            }
        }
        out
    }

    /// `x -> p(x + s)`.
    pub fn shift(&self, s: &CVec) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            // expand prod_k (x_k + s_k)^{a_k}
            let mut acc = Poly::constant(self.nvars, *c);
            for (k, &e) in a.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut factor = Poly::zero(self.nvars);
                let mut binom = 1.0;
                for j in 0..=e {
                    let mut alpha = vec![0; self.nvars];
                    alpha[k] = j;
                    factor.add_term(alpha, s[k].powu(e - j) * binom);
                    binom = binom * (e - j) as f64 / (j + 1) as f64;
                }
                acc = acc.mul(&factor);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Conjugates the coefficients (the polynomial evaluated at conjugate arguments, conjugated).
    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.conj());
        }
        out
    }

    pub fn eval(&self, x: &CVec) -> C64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.iter()
                    .zip(x.iter())
                    .fold(*c, |acc, (&e, xk)| acc * xk.powu(e))
            })
            .sum()
    }

    pub fn eval_real(&self, x: &crate::linalg::RVec) -> C64 {
        self.eval(&x.map(|v| C64::new(v, 0.0)))
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            if c.norm() > tol {
                out.add_term(a.clone(), *c);
            }
        }
        out
    }
}

/// `alpha!` for a multi-index.
pub fn multi_factorial(alpha: &[u32]) -> f64 {
    alpha
        .iter()
        .map(|&e| (1..=e).map(|k| k as f64).product::<f64>())
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn cv(v: &[(f64, f64)]) -> CVec {
        CVec::from_iterator(v.len(), v.iter().map(|&(r, i)| c(r, i)))
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = Poly::var(2, 0)
            .mul(&Poly::var(2, 0))
            .mul(&Poly::var(2, 1))
            .add(&Poly::constant(2, c(0.5, -1.0)));
        let s = cv(&[(0.3, 0.2), (-1.0, 0.5)]);
        let x = cv(&[(1.1, -0.4), (0.7, 0.9)]);
        let lhs = p.shift(&s).eval(&x);
        let rhs = p.eval(&(&x + &s));
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn derivative_of_monomial() {
        let p = Poly::monomial(vec![3, 1], c(2.0, 0.0));
        let d = p.derivative(0);
        assert_eq!(d.coeff(&[2, 1]), c(6.0, 0.0));
        assert_eq!(d.degree(), 3);
        assert!(p.derivative(1).derivative(1).is_zero());
    }

    #[test]
    fn degree_and_factorial() {
        assert_eq!(Poly::zero(3).degree(), 0);
        assert_eq!(Poly::monomial(vec![2, 0, 3], c(1.0, 0.0)).degree(), 5);
        assert_eq!(multi_factorial(&[3, 2]), 12.0);
    }
}

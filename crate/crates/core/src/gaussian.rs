//! Gaussian measures `Z exp(-x^T P x) dx`, tensor Gauss-Hermite quadrature and
//! exact moments.
//!
//! Quadrature serves as the independent oracle for the closed-form inner
//! products; moments feed the closed forms themselves.

use std::collections::HashMap;
use std::f64::consts::PI;

use gauss_quad::hermite::GaussHermite;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{CVec, RMat, RVec, C64};
use crate::poly::{MultiIndex, Poly};

/// Upper bound on `d * order^d` for a tensor grid.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Seed of the Monte Carlo fallback.
pub const DEFAULT_MC_SEED: u64 = 0xC0FFEE;

/// Default Gauss-Hermite order per dimension.
pub fn default_order(d: usize) -> usize {
    match d {
        0 | 1 => 40,
        2 => 20,
        _ => 12,
    }
}

/// Probability measure with density `Z exp(-x^T P x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMeasure {
    precision: RMat,
    chol_l: RMat,
    normalization: f64,
}

impl GaussianMeasure {
    pub fn new(precision: RMat) -> Result<Self> {
        if !precision.is_square() || precision.nrows() == 0 {
            return Err(Error::InvalidInput("precision must be square and nonempty".into()));
        }
        let p = crate::linalg::symmetrize(&precision);
        let chol = p
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidInput("precision must be positive definite".into()))?;
        let l = chol.l();
        let d = p.nrows();
        let det_sqrt: f64 = l.diagonal().iter().product();
        let normalization = PI.powf(-(d as f64) / 2.0) * det_sqrt;
        Ok(Self {
            precision: p,
            chol_l: l,
            normalization,
        })
    }

    pub fn dim(&self) -> usize {
        self.precision.nrows()
    }

    pub fn precision(&self) -> &RMat {
        &self.precision
    }

    /// `Z = pi^{-d/2} det(P)^{1/2}`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// `(2P)^{-1}`.
    pub fn covariance(&self) -> RMat {
        (&self.precision * 2.0)
            .try_inverse()
            .expect("positive definite precision")
    }

    pub fn density(&self, x: &RVec) -> f64 {
        self.normalization * (-x.dot(&(&self.precision * x))).exp()
    }

    /// Maps standard coordinates `y` (weight `exp(-|y|^2)`) to `x = L^{-T} y`.
    fn unwhiten(&self, y: &RVec) -> RVec {
        self.chol_l
            .transpose()
            .solve_upper_triangular(y)
            .expect("nonsingular Cholesky factor")
    }
}

/// Normalized one-dimensional rule for the weight `exp(-y^2) / sqrt(pi)`.
fn hermite_rule(order: usize) -> Vec<(f64, f64)> {
    if order == 1 {
        return vec![(0.0, 1.0)];
    }
    let rule = GaussHermite::new(order).expect("order >= 2");
    let mut pairs: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (x, w / PI.sqrt()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Tensor-product Gauss-Hermite grid for `measure`.
pub fn gauss_hermite_grid(measure: &GaussianMeasure, order: usize) -> Result<Vec<(RVec, f64)>> {
    gauss_hermite_grid_with_budget(measure, order, DEFAULT_BUDGET)
}

pub fn gauss_hermite_grid_with_budget(
    measure: &GaussianMeasure,
    order: usize,
    budget: u128,
) -> Result<Vec<(RVec, f64)>> {
    if order == 0 {
        return Err(Error::InvalidInput("quadrature order must be at least 1".into()));
    }
    let d = measure.dim();
    let evaluations = (d as u128).saturating_mul((order as u128).saturating_pow(d as u32));
    if evaluations > budget {
        return Err(Error::BudgetExceeded {
            evaluations,
            budget,
        });
    }
    let rule = hermite_rule(order);
    let total = order.pow(d as u32);
    let mut grid = Vec::with_capacity(total);
    let mut idx = vec![0usize; d];
    for _ in 0..total {
        let y = RVec::from_iterator(d, idx.iter().map(|&i| rule[i].0));
        let w: f64 = idx.iter().map(|&i| rule[i].1).product();
        grid.push((measure.unwhiten(&y), w));
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < order {
                break;
            }
            *slot = 0;
        }
    }
    Ok(grid)
}

/// Sum in a fixed binary tree, independent of how the values were produced.
pub fn pairwise_sum(values: &[C64]) -> C64 {
    match values.len() {
        0 => C64::new(0.0, 0.0),
        1 => values[0],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// `int f d(measure)` by tensor Gauss-Hermite quadrature.
pub fn integrate<F>(f: F, measure: &GaussianMeasure, order: usize) -> Result<C64>
where
    F: Fn(&RVec) -> C64,
{
    let grid = gauss_hermite_grid(measure, order)?;
    let values: Vec<C64> = grid.iter().map(|(x, w)| f(x) * *w).collect();
    Ok(pairwise_sum(&values))
}

/// Seeded Monte Carlo estimate of `int f d(measure)`, for dimensions beyond the grid budget.
pub fn integrate_monte_carlo<F>(f: F, measure: &GaussianMeasure, samples: usize, seed: u64) -> C64
where
    F: Fn(&RVec) -> C64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = measure.dim();
    let values: Vec<C64> = (0..samples)
        .map(|_| {
            // exp(-y^2) has variance 1/2 per coordinate
            let y = RVec::from_iterator(
                d,
                (0..d).map(|_| {
                    let s: f64 = StandardNormal.sample(&mut rng);
                    s * std::f64::consts::FRAC_1_SQRT_2
                }),
            );
            f(&measure.unwhiten(&y))
        })
        .collect();
    pairwise_sum(&values) / samples as f64
}

/// Exact moments `E[x^alpha]` of a centered Gaussian, memoized by multi-index.
#[derive(Debug, Clone)]
pub struct Moments {
    cov: RMat,
    cache: HashMap<MultiIndex, f64>,
}

impl Moments {
    pub fn from_covariance(cov: RMat) -> Self {
        Self {
            cov,
            cache: HashMap::new(),
        }
    }

    pub fn from_precision(precision: &RMat) -> Result<Self> {
        Ok(Self::from_covariance(
            GaussianMeasure::new(precision.clone())?.covariance(),
        ))
    }

    pub fn covariance(&self) -> &RMat {
        &self.cov
    }

    /// `E[x^alpha]` via `E[x_i x^beta] = sum_j beta_j Sigma_ij E[x^{beta - e_j}]`.
    pub fn moment(&mut self, alpha: &[u32]) -> f64 {
        let total: u32 = alpha.iter().sum();
        if total == 0 {
            return 1.0;
        }
        if total % 2 == 1 {
            return 0.0;
        }
        if let Some(&v) = self.cache.get(alpha) {
            return v;
        }
        let i = alpha.iter().position(|&e| e > 0).expect("nonzero index");
        let mut beta = alpha.to_vec();
        beta[i] -= 1;
        let mut acc = 0.0;
        for j in 0..beta.len() {
            if beta[j] == 0 || self.cov[(i, j)] == 0.0 {
                continue;
            }
            let mut gamma = beta.clone();
            gamma[j] -= 1;
            acc += beta[j] as f64 * self.cov[(i, j)] * self.moment(&gamma);
        }
        self.cache.insert(alpha.to_vec(), acc);
        acc
    }

    /// `E[p(x)]`.
    pub fn expect(&mut self, p: &Poly) -> C64 {
        p.terms().map(|(a, c)| c * self.moment(a)).sum()
    }

    /// `E[p(x) exp(b . x)] = exp(b^T Sigma b / 2) E[p(x + Sigma b)]` for complex `b`.
    pub fn expect_exp(&mut self, p: &Poly, b: &CVec) -> C64 {
        let cov_c = self.cov.map(|x| C64::new(x, 0.0));
        let sb = &cov_c * b;
        let quad = b.iter().zip(sb.iter()).map(|(x, y)| x * y).sum::<C64>();
        (quad * 0.5).exp() * self.expect(&p.shift(&sb))
    }
}

/// `E[x^alpha]` for the centered Gaussian of precision `p`.
pub fn gaussian_moment(precision: &RMat, alpha: &[u32]) -> Result<f64> {
    if alpha.len() != precision.nrows() {
        return Err(Error::InvalidInput("multi-index length must match dimension".into()));
    }
    Ok(Moments::from_precision(precision)?.moment(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn unit(d: usize) -> GaussianMeasure {
        GaussianMeasure::new(RMat::identity(d, d)).unwrap()
    }

    #[test]
    fn order_one_rule() {
        let g = gauss_hermite_grid(&unit(1), 1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].0[0], 0.0);
        assert_eq!(g[0].1, 1.0);
    }

    #[test]
    fn second_moment_1d() {
        let v = integrate(|x| c(x[0] * x[0], 0.0), &unit(1), 5).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_moment_2d() {
        let v = integrate(|x| c((x[0] * x[1]).powi(2), 0.0), &unit(2), 10).unwrap();
        assert!((v.re - 0.25).abs() < 1e-10);
    }

    #[test]
    fn exponential_1d() {
        let v = integrate(|x| c(x[0].exp(), 0.0), &unit(1), 20).unwrap();
        assert!((v.re - 0.25f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn moments_examples() {
        let one = RMat::identity(1, 1);
        assert!((gaussian_moment(&one, &[2]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(gaussian_moment(&one, &[3]).unwrap(), 0.0);
        let p = RMat::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
        assert_eq!(gaussian_moment(&p, &[2, 1]).unwrap(), 0.0);
        assert!((gaussian_moment(&RMat::identity(2, 2), &[2, 2]).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn budget_enforced() {
        let m = unit(3);
        assert!(matches!(
            gauss_hermite_grid(&m, 300),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn weights_sum_to_one() {
        for order in [1, 2, 7, 40] {
            let s: f64 = gauss_hermite_grid(&unit(1), order)
                .unwrap()
                .iter()
                .map(|(_, w)| w)
                .sum();
            assert!((s - 1.0).abs() < 1e-12, "order {order}: {s}");
        }
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let m = unit(4);
        let f = |x: &RVec| c(x.norm_squared(), 0.0);
        let a = integrate_monte_carlo(f, &m, 2000, DEFAULT_MC_SEED);
        let b = integrate_monte_carlo(f, &m, 2000, DEFAULT_MC_SEED);
        assert_eq!(a, b);
        assert!((a.re - 2.0).abs() < 0.2);
    }
}

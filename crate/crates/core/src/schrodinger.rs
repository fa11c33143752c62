//! Schrödinger representation on `Q`: vacuum, coherent states and closed-form
//! inner products of coherent spans.
//!
//! A reduced coherent state is the exponential of an affine function,
//! `k_tau(phi) = exp(a . phi + c)` with `a = Omega sigma + i lambda`,
//! `c = -Omega(sigma, sigma) / 2 - i [tau, tau] / 2`, where `sigma = q(tau)` and
//! `lambda . phi = [tau, phi]`. Inner products reduce to Gaussian moments
//! against `nu_Q`, the normalized Gaussian with precision `S = Re Omega`.

use crate::correspondence::VacuumForm;
use crate::error::{Error, Result};
use crate::gaussian::{integrate, GaussianMeasure, Moments};
use crate::linalg::{condition_number, CMat, CVec, RMat, RVec, C64, I, MAX_CONDITION};
use crate::quantization::Quantization;
use crate::span::{CoherentSpan, Representation};

/// Full (`K^S_tau`) or reduced (`k^S_tau`) coherent wave function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Full,
    Reduced,
}

impl Flavor {
    pub fn representation(self) -> Representation {
        match self {
            Flavor::Full => Representation::SchrodingerFull,
            Flavor::Reduced => Representation::SchrodingerReduced,
        }
    }
}

fn real_to_c(v: &RVec) -> CVec {
    v.map(|x| C64::new(x, 0.0))
}

/// `K^S_0(phi) = exp(-Omega(phi, phi) / 2)`.
pub fn vacuum_wavefunction(omega: &VacuumForm, phi: &RVec) -> C64 {
    (-omega.eval(phi, phi) * 0.5).exp()
}

/// `(a, c)` with `k_tau(phi) = exp(a . phi + c)`.
pub fn reduced_exponent(q: &Quantization, tau: &RVec) -> (CVec, C64) {
    let ps = q.phase_space();
    let sigma = real_to_c(&ps.quotient(tau));
    let lambda = real_to_c(&ps.bracket_covector(tau));
    let om_sigma = q.omega_matrix() * &sigma;
    let a = &om_sigma + lambda * I;
    let c = -sigma.dot(&om_sigma) * 0.5 - I * (ps.bracket(tau, tau) * 0.5);
    (a, c)
}

/// `(a, c)` of the factor multiplying a term's prefactor, leaving out the
/// vacuum factor of the full flavor.
pub(crate) fn term_exponent(q: &Quantization, rep: Representation, tau: &RVec) -> (CVec, C64) {
    let (a, c) = reduced_exponent(q, tau);
    match rep {
        Representation::SchrodingerFull => (a, c + 0.25 * q.g(tau, tau)),
        _ => (a, c),
    }
}

/// `k^S_tau(phi)`, or `K^S_tau(phi) = exp(g(tau, tau) / 4) k^S_tau(phi) K^S_0(phi)`.
pub fn coherent_wavefunction(q: &Quantization, tau: &RVec, flavor: Flavor, phi: &RVec) -> C64 {
    let (a, c) = reduced_exponent(q, tau);
    let k = (a.dot(&real_to_c(phi)) + c).exp();
    match flavor {
        Flavor::Reduced => k,
        Flavor::Full => {
            (0.25 * q.g(tau, tau)).exp() * k * vacuum_wavefunction(q.vacuum_form(), phi)
        }
    }
}

/// Reduced coherent state parametrized by `(sigma, lambda)` in `Q x Q*`:
/// `exp(Omega(sigma, phi) + i lambda(phi) - Omega(sigma, sigma) / 2 - i lambda(sigma) / 2)`.
pub fn coherent_from_sigma_lambda(
    omega: &VacuumForm,
    sigma: &RVec,
    lambda: &RVec,
    phi: &RVec,
) -> C64 {
    let exponent = omega.eval(sigma, phi) + I * lambda.dot(phi)
        - omega.eval(sigma, sigma) * 0.5
        - I * (0.5 * lambda.dot(sigma));
    exponent.exp()
}

fn require_schrodinger(span: &CoherentSpan) -> Result<()> {
    if span.rep().is_schrodinger() {
        Ok(())
    } else {
        Err(Error::RepresentationMismatch {
            expected: "schrodinger",
            found: span.rep().name(),
        })
    }
}

/// Pointwise value of a Schrödinger span at `phi` in `Q`.
pub fn evaluate(q: &Quantization, span: &CoherentSpan, phi: &RVec) -> Result<C64> {
    require_schrodinger(span)?;
    let phic = real_to_c(phi);
    let mut total = C64::new(0.0, 0.0);
    for t in span.terms() {
        let (a, c) = term_exponent(q, span.rep(), &t.label);
        total += t.coeff * t.poly.eval(&phic) * (a.dot(&phic) + c).exp();
    }
    if span.rep() == Representation::SchrodingerFull {
        total *= vacuum_wavefunction(q.vacuum_form(), phi);
    }
    Ok(total)
}

/// The normalized Gaussian `nu_Q` of precision `Re Omega`.
pub fn nu_q(q: &Quantization) -> GaussianMeasure {
    GaussianMeasure::new(q.vacuum_form().s().clone()).expect("S is positive definite")
}

/// Closed-form `<a, b>`; the full flavor integrates over `mu_Q`, the reduced one over `nu_Q`.
///
/// Both reduce to `E_nu_Q[conj(p1) p2 exp(b . phi)]`, because `|K^S_0|^2 mu_Q = nu_Q`.
pub fn inner_product(q: &Quantization, a: &CoherentSpan, b: &CoherentSpan) -> Result<C64> {
    require_schrodinger(a)?;
    if a.rep() != b.rep() {
        return Err(Error::RepresentationMismatch {
            expected: a.rep().name(),
            found: b.rep().name(),
        });
    }
    let mut moments = Moments::from_covariance(nu_q(q).covariance());
    let mut total = C64::new(0.0, 0.0);
    for t1 in a.terms() {
        let (a1, c1) = term_exponent(q, a.rep(), &t1.label);
        let p1 = t1.poly.conj();
        for t2 in b.terms() {
            let (a2, c2) = term_exponent(q, b.rep(), &t2.label);
            let bvec = a1.map(|x| x.conj()) + a2;
            let prefactor = (c1.conj() + c2).exp() * t1.coeff.conj() * t2.coeff;
            total += prefactor * moments.expect_exp(&p1.mul(&t2.poly), &bvec);
        }
    }
    Ok(total)
}

/// `<a, b>` by Gauss-Hermite quadrature against `nu_Q`; an independent oracle.
pub fn inner_product_quadrature(
    q: &Quantization,
    a: &CoherentSpan,
    b: &CoherentSpan,
    order: usize,
) -> Result<C64> {
    require_schrodinger(a)?;
    if a.rep() != b.rep() {
        return Err(Error::RepresentationMismatch {
            expected: a.rep().name(),
            found: b.rep().name(),
        });
    }
    let measure = nu_q(q);
    let full = a.rep() == Representation::SchrodingerFull;
    let s = q.vacuum_form().s().clone();
    integrate(
        |phi| {
            let va = evaluate(q, a, phi).expect("checked representation");
            let vb = evaluate(q, b, phi).expect("checked representation");
            // d mu_Q = exp(phi^T S phi) d nu_Q
            let weight = if full { phi.dot(&(&s * phi)).exp() } else { 1.0 };
            va.conj() * vb * weight
        },
        &measure,
        order,
    )
}

/// Gram matrix `G_ij = <s_i, s_j>`.
pub fn gram(q: &Quantization, states: &[CoherentSpan]) -> Result<CMat> {
    let k = states.len();
    let mut g = CMat::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = inner_product(q, &states[i], &states[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    Ok(g)
}

/// Ridge added to an ill-conditioned Gram matrix.
pub const DENSITY_RIDGE: f64 = 1e-10;

/// Residuals of projecting a target onto growing sets of coherent states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProbe {
    /// `residuals[k]` is the distance from the target to the span of the first `k` states.
    pub residuals: Vec<f64>,
    /// `regularized[k]` records whether the ridge was needed at size `k`.
    pub regularized: Vec<bool>,
    pub labels: Vec<RVec>,
}

/// The fixed label grid: points of `M` at momenta `0.5, -0.5, 1, -1, ...`,
/// cycling through the basis directions of `M`.
pub fn density_labels(q: &Quantization, k: usize) -> Vec<RVec> {
    let ps = q.phase_space();
    let n = ps.n();
    (0..k)
        .map(|i| {
            let dir = i % n;
            let level = i / n;
            let magnitude = 0.5 * (level / 2 + 1) as f64;
            let sign = if level.is_multiple_of(2) { 1.0 } else { -1.0 };
            ps.basis_m().column(dir) * (sign * magnitude)
        })
        .collect()
}

/// Least-squares residuals of `target` against the first `k` grid states, `k = 0..=k_max`.
pub fn density_probe(q: &Quantization, target: &CoherentSpan, k_max: usize) -> Result<DensityProbe> {
    require_schrodinger(target)?;
    let labels = density_labels(q, k_max);
    let states: Vec<CoherentSpan> = labels
        .iter()
        .map(|l| CoherentSpan::coherent(target.rep(), l))
        .collect();
    let target_sq = inner_product(q, target, target)?.re;
    let full_gram = gram(q, &states)?;
    let overlaps: Vec<C64> = states
        .iter()
        .map(|s| inner_product(q, s, target))
        .collect::<Result<_>>()?;
    let mut residuals = vec![target_sq.max(0.0).sqrt()];
    let mut regularized = vec![false];
    for k in 1..=k_max {
        let mut g = full_gram.view((0, 0), (k, k)).into_owned();
        let b = CVec::from_iterator(k, overlaps[..k].iter().copied());
        let real_embed = embed_hermitian(&g);
        let ridge = condition_number(&real_embed) > MAX_CONDITION;
        if ridge {
            for i in 0..k {
                g[(i, i)] += DENSITY_RIDGE;
            }
        }
        let coeffs = g
            .clone()
            .cholesky()
            .map(|ch| ch.solve(&b))
            .or_else(|| g.clone().lu().solve(&b))
            .ok_or(Error::IllConditioned {
                what: "density Gram matrix",
                condition: f64::INFINITY,
            })?;
        let explained = b.dotc(&coeffs).re;
        residuals.push((target_sq - explained).max(0.0).sqrt());
        regularized.push(ridge);
    }
    Ok(DensityProbe {
        residuals,
        regularized,
        labels,
    })
}

/// Real `2k x 2k` embedding of a complex Hermitian matrix, same singular values doubled.
fn embed_hermitian(g: &CMat) -> RMat {
    let k = g.nrows();
    let mut r = RMat::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let v = g[(i, j)];
            r[(i, j)] = v.re;
            r[(i + k, j + k)] = v.re;
            r[(i, j + k)] = -v.im;
            r[(i + k, j)] = v.im;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, j0, two_mode};
    use crate::linalg::c;
    use crate::poly::Poly;
    use crate::span::Term;

    fn rv(v: &[f64]) -> RVec {
        RVec::from_row_slice(v)
    }

    fn e1_j0() -> Quantization {
        let ps = e1();
        Quantization::from_complex_structure(&ps, &j0(&ps))
    }

    #[test]
    fn vacuum_examples() {
        let one = |s: f64, a: f64| {
            VacuumForm::new(RMat::from_element(1, 1, s), RMat::from_element(1, 1, a)).unwrap()
        };
        assert!((vacuum_wavefunction(&one(1.0, 0.0), &rv(&[0.0])) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(
            (vacuum_wavefunction(&one(1.0, 0.0), &rv(&[1.0])) - c((-0.5f64).exp(), 0.0)).norm()
                < 1e-15
        );
        let expected = c(-0.5, 0.5).exp();
        assert!((vacuum_wavefunction(&one(1.0, -1.0), &rv(&[1.0])) - expected).norm() < 1e-15);
    }

    #[test]
    fn coherent_examples() {
        let q = e1_j0();
        let r = |tau: &[f64], phi: f64| coherent_wavefunction(&q, &rv(tau), Flavor::Reduced, &rv(&[phi]));
        assert!((r(&[0.0, 0.0], 0.7) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((r(&[1.0, 0.0], 0.0) - c((-0.5f64).exp(), 0.0)).norm() < 1e-15);
        assert!((r(&[1.0, 2.0], 1.0) - c(0.5, 1.0).exp()).norm() < 1e-14);
    }

    #[test]
    fn sigma_lambda_examples() {
        let q = e1_j0();
        let om = q.vacuum_form();
        assert!((coherent_from_sigma_lambda(om, &rv(&[0.0]), &rv(&[0.0]), &rv(&[0.4])) - 1.0).norm() < 1e-15);
        let v = coherent_from_sigma_lambda(om, &rv(&[1.0]), &rv(&[2.0]), &rv(&[1.0]));
        assert!((v - c(0.5, 1.0).exp()).norm() < 1e-14);
        let v = coherent_from_sigma_lambda(om, &rv(&[1.0]), &rv(&[0.0]), &rv(&[1.0]));
        assert!((v - c(0.5f64.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sigma_lambda_matches_label() {
        let ps = two_mode();
        let q = Quantization::from_vacuum_form(&ps, &crate::fixtures::coupled_omega()).unwrap();
        let sigma = rv(&[0.3, -0.8]);
        let lambda = rv(&[1.1, 0.4]);
        let tau = ps.label_from_sigma_lambda(&sigma, &lambda);
        let phi = rv(&[0.2, 0.9]);
        let a = coherent_from_sigma_lambda(q.vacuum_form(), &sigma, &lambda, &phi);
        let b = coherent_wavefunction(&q, &tau, Flavor::Reduced, &phi);
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn inner_product_examples() {
        let q = e1_j0();
        let full = |t: &[f64]| CoherentSpan::coherent(Representation::SchrodingerFull, &rv(t));
        let v = inner_product(&q, &full(&[0.0, 0.0]), &full(&[0.0, 0.0])).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let v = inner_product(&q, &full(&[1.0, 0.0]), &full(&[0.0, 1.0])).unwrap();
        assert!((v - c(0.0, 0.5).exp()).norm() < 1e-14);
        let red = CoherentSpan::coherent(Representation::SchrodingerReduced, &rv(&[1.0, 2.0]));
        assert!((inner_product(&q, &red, &red).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn quadrature_agrees_with_closed_form() {
        let q = e1_j0();
        let mut a = CoherentSpan::coherent(Representation::SchrodingerFull, &rv(&[0.4, -0.3]));
        a.push(Term {
            coeff: c(0.2, 0.5),
            label: rv(&[-0.1, 0.6]),
            poly: Poly::var(1, 0).mul(&Poly::var(1, 0)),
        })
        .unwrap();
        let b = CoherentSpan::coherent(Representation::SchrodingerFull, &rv(&[0.2, 0.7]));
        let closed = inner_product(&q, &a, &b).unwrap();
        let quad = inner_product_quadrature(&q, &a, &b, 40).unwrap();
        assert!((closed - quad).norm() < 1e-10);
    }

    #[test]
    fn density_probe_examples() {
        let q = e1_j0();
        let mut target = CoherentSpan::empty(Representation::SchrodingerReduced, 1);
        target
            .push(Term {
                coeff: c(1.0, 0.0),
                label: RVec::zeros(2),
                poly: Poly::var(1, 0),
            })
            .unwrap();
        let probe = density_probe(&q, &target, 8).unwrap();
        assert!((probe.residuals[0] - 0.5f64.sqrt()).abs() < 1e-14);
        for w in probe.residuals.windows(2) {
            assert!(w[1] < w[0], "{:?}", probe.residuals);
        }
        // a grid state is reproduced exactly at its own index
        let grid = CoherentSpan::coherent(Representation::SchrodingerReduced, &probe.labels[2]);
        let p = density_probe(&q, &grid, 3).unwrap();
        assert!(p.residuals[3] < 1e-7);
    }
}

//! The Segal-Bargmann transform between the Schrödinger and holomorphic representations.
//!
//! On coherent labels the transform is `K^S_tau -> K^H_tau` and
//! `k^S_tau -> K~^H_tau`. Polynomial prefactors are carried along by the
//! intertwining relation `B F^ = F^ B`: multiplication by the coordinate
//! `phi_k` is the quantization of an observable with Hamiltonian vector in
//! `M`, and multiplication by `z_k` that of the complex covector `z_k`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gaussian::{integrate, GaussianMeasure};
use crate::holomorphic::alpha_fn;
use crate::linalg::{symmetrize, to_complex_vec, CVec, RMat, RVec, C64, I};
use crate::observables::{holomorphic_term_action, schrodinger_term_action, ComplexObservable};
use crate::poly::Poly;
use crate::quantization::Quantization;
use crate::span::{CoherentSpan, Term};

/// `B(xi, phi)`, holomorphic in `xi`.
pub fn kernel(q: &Quantization, xi: &RVec, phi: &RVec) -> C64 {
    let ps = q.phase_space();
    let jphi = q.j_map() * phi;
    let jq = q.j_map() * ps.quotient(xi);
    let exponent = q.braces(&jphi, xi) - I * (0.5 * ps.bracket(&jphi, &jphi))
        - 0.5 * q.g(&jphi, &jphi)
        + 0.25 * q.g(xi, xi)
        - q.braces(&jq, xi) * 0.5;
    exponent.exp()
}

/// Largest `M`-component of `J M` relative to the size of `J M`.
fn jm_off_n(q: &Quantization) -> f64 {
    let ps = q.phase_space();
    let jm = q.j() * ps.basis_m();
    let m_part = ps.frame_inv().rows(ps.n(), ps.n()) * &jm;
    m_part.amax() / jm.amax().max(f64::MIN_POSITIVE)
}

/// Coordinate form `B(z, x) = exp(sqrt 2 x . z - x . x / 2 - z . z / 2)` of the kernel.
///
/// `z` are holomorphic coordinates of a point of `L` and `x` the coordinates of
/// a point of `Q` in an `S`-orthonormal basis. Only meaningful when `N = J M`.
pub fn coordinate_kernel(q: &Quantization, z: &CVec, x: &RVec) -> Result<C64> {
    if z.len() != q.n() || x.len() != q.n() {
        return Err(Error::InvalidInput("coordinate vectors must have length n".into()));
    }
    let off = jm_off_n(q);
    if off > 1e-10 {
        return Err(Error::Inadmissible(format!(
            "coordinate form needs N = J M, off by {off:.3e}"
        )));
    }
    let xc = to_complex_vec(x);
    let exponent = xc.dot(z) * std::f64::consts::SQRT_2 - 0.5 * x.dot(x) - z.dot(z) * 0.5;
    Ok(exponent.exp())
}

/// `S`-orthonormal coordinates of a point of `Q`.
pub fn q_coordinates(q: &Quantization, phi: &RVec) -> RVec {
    q.q_orthonormal_basis()
        .clone()
        .try_inverse()
        .expect("basis is invertible")
        * phi
}

/// The observables whose quantizations multiply by `phi_k` in the Schrödinger representation.
fn coordinate_observables(q: &Quantization) -> Vec<ComplexObservable> {
    let ps = q.phase_space();
    let n = ps.n();
    let pmn_inv_t = ps.pairing_mn_inv().transpose();
    (0..n)
        .map(|k| {
            // X_k = -BM Pmn^{-T} e_k lies in M with [X_k, phi] = -phi_k
            let x = -(ps.basis_m() * pmn_inv_t.column(k));
            let f = ps.w() * x * 2.0;
            ComplexObservable::new(ps, to_complex_vec(&f), C64::new(0.0, 0.0))
        })
        .collect()
}

/// The observables whose quantizations multiply by `z_k` in the holomorphic representation.
fn z_observables(q: &Quantization) -> Vec<ComplexObservable> {
    let zm = q.z_matrix();
    (0..q.n())
        .map(|k| {
            let f: CVec = zm.row(k).transpose();
            ComplexObservable::new(q.phase_space(), f, C64::new(0.0, 0.0))
        })
        .collect()
}

/// `sum_alpha p_alpha A^alpha 1`, with `A^alpha` built by applying `act(k, .)` repeatedly.
fn transport<F>(p: &Poly, nvars: usize, act: F) -> Poly
where
    F: Fn(usize, &Poly) -> Poly,
{
    let mut memo: HashMap<Vec<u32>, Poly> = HashMap::new();
    memo.insert(vec![0; nvars], Poly::one(nvars));
    let mut out = Poly::zero(nvars);
    for (alpha, coeff) in p.terms() {
        let image = image_of(alpha, &mut memo, &act);
        out = out.add(&image.scale(*coeff));
    }
    out
}

fn image_of<F>(alpha: &[u32], memo: &mut HashMap<Vec<u32>, Poly>, act: &F) -> Poly
where
    F: Fn(usize, &Poly) -> Poly,
{
    if let Some(p) = memo.get(alpha) {
        return p.clone();
    }
    let k = alpha.iter().position(|&a| a > 0).expect("nonzero index");
    let mut lower = alpha.to_vec();
    lower[k] -= 1;
    let below = image_of(&lower, memo, act);
    let p = act(k, &below);
    memo.insert(alpha.to_vec(), p.clone());
    p
}

/// `B psi` for a Schrödinger span, or `B^{-1} psi` for a holomorphic one.
pub fn transform(q: &Quantization, psi: &CoherentSpan) -> Result<CoherentSpan> {
    let n = psi.n();
    if n != q.n() {
        return Err(Error::InvalidInput("span and phase space differ in dimension".into()));
    }
    let target = psi.rep().partner();
    let mut out = psi.like_in(target);
    if psi.rep().is_schrodinger() {
        let obs = coordinate_observables(q);
        for t in psi.terms() {
            let poly = transport(&t.poly, n, |k, p| {
                holomorphic_term_action(q, &obs[k], &t.label, p)
            });
            out.push(Term {
                coeff: t.coeff,
                label: t.label.clone(),
                poly,
            })?;
        }
    } else {
        let obs = z_observables(q);
        for t in psi.terms() {
            let poly = transport(&t.poly, n, |k, p| {
                schrodinger_term_action(q, &obs[k], target, &t.label, p)
            });
            out.push(Term {
                coeff: t.coeff,
                label: t.label.clone(),
                poly,
            })?;
        }
    }
    Ok(out)
}

/// `B^{-1}`, rejecting Schrödinger input.
pub fn inverse(q: &Quantization, psi: &CoherentSpan) -> Result<CoherentSpan> {
    if psi.rep().is_schrodinger() {
        return Err(Error::RepresentationMismatch {
            expected: "holomorphic",
            found: psi.rep().name(),
        });
    }
    transform(q, psi)
}

/// `(B psi)(xi) = int psi(phi) B(xi, phi) d mu_Q(phi)` by quadrature, for a full-flavor `psi`.
pub fn transform_quadrature<F>(q: &Quantization, psi: F, xi: &RVec, order: usize) -> Result<C64>
where
    F: Fn(&RVec) -> C64,
{
    let s = q.vacuum_form().s().clone();
    let measure = GaussianMeasure::new(s.clone())?;
    // d mu_Q = exp(phi^T S phi) d nu_Q
    integrate(
        |phi| psi(phi) * kernel(q, xi, phi) * phi.dot(&(&s * phi)).exp(),
        &measure,
        order,
    )
}

/// `int f d(base)` as an integral against the Gaussian `envelope`, where `base`
/// has density `base_norm * exp(-x^T base_prec x)`.
pub(crate) fn integrate_reweighted<F>(
    f: F,
    base_norm: f64,
    base_prec: &RMat,
    envelope: &RMat,
    order: usize,
) -> Result<C64>
where
    F: Fn(&RVec) -> C64,
{
    let env = GaussianMeasure::new(envelope.clone())?;
    let diff = envelope - base_prec;
    let ratio = base_norm / env.normalization();
    integrate(|x| f(x) * (ratio * x.dot(&(&diff * x)).exp()), &env, order)
}

/// Precision of the Gaussian envelope of `psi conj(B) nu_L`: `G/4 + sym(G j q)/2`.
fn inverse_envelope(q: &Quantization) -> RMat {
    let gjq = q.metric() * q.j_map() * q.phase_space().quotient_matrix();
    q.metric() * 0.25 + symmetrize(&gjq) * 0.5
}

/// `(B^{-1} psi)(phi) = int psi(xi) conj(B(xi, phi)) d nu_L(xi)` by quadrature.
pub fn inverse_quadrature<F>(q: &Quantization, psi: F, phi: &RVec, order: usize) -> Result<C64>
where
    F: Fn(&RVec) -> C64,
{
    let nu = crate::holomorphic::nu_l(q);
    integrate_reweighted(
        |xi| psi(xi) * kernel(q, xi, phi).conj(),
        nu.normalization(),
        nu.precision(),
        &inverse_envelope(q),
        order,
    )
}

/// Normalization of `mu_L`, the Lebesgue measure with `d nu_L = exp(-g/2) d mu_L`.
pub(crate) fn mu_l_norm(q: &Quantization) -> f64 {
    crate::holomorphic::nu_l(q).normalization()
}

/// Precision of the Gaussian envelope of the pairing integrands: `G/4 + q^T S q / 2`.
pub(crate) fn pairing_envelope(q: &Quantization) -> RMat {
    let qm = q.phase_space().quotient_matrix();
    q.metric() * 0.25 + qm.transpose() * q.vacuum_form().s() * qm * 0.5
}

/// `<psi', B psi> = int conj(psi'(xi)) psi(q(xi)) conj(alpha(xi)) d mu_L(xi)`.
///
/// `psi_h` is a holomorphic wave function and `psi_s` a full-flavor Schrödinger one.
pub fn pairing<FH, FS>(q: &Quantization, psi_h: FH, psi_s: FS, order: usize) -> Result<C64>
where
    FH: Fn(&RVec) -> C64,
    FS: Fn(&RVec) -> C64,
{
    let ps = q.phase_space();
    let zero = RMat::zeros(ps.dim(), ps.dim());
    integrate_reweighted(
        |xi| psi_h(xi).conj() * psi_s(&ps.quotient(xi)) * alpha_fn(q, xi).conj(),
        mu_l_norm(q),
        &zero,
        &pairing_envelope(q),
        order,
    )
}

/// `<psi, B^{-1} psi'> = int conj(psi(q(xi))) psi'(xi) alpha(xi) d mu_L(xi)`.
pub fn pairing_inverse<FS, FH>(q: &Quantization, psi_s: FS, psi_h: FH, order: usize) -> Result<C64>
where
    FS: Fn(&RVec) -> C64,
    FH: Fn(&RVec) -> C64,
{
    let ps = q.phase_space();
    let zero = RMat::zeros(ps.dim(), ps.dim());
    integrate_reweighted(
        |xi| psi_s(&ps.quotient(xi)).conj() * psi_h(xi) * alpha_fn(q, xi),
        mu_l_norm(q),
        &zero,
        &pairing_envelope(q),
        order,
    )
}

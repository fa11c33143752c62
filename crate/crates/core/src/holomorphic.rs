//! Holomorphic representation on `L`: coherent states, reproducing kernel and
//! inner products over `nu_L`.
//!
//! A term `p(z) exp(conj(t) . z + c)` with `t = z(tau)` is a polynomial times
//! a standard (`c = 0`) or normalized (`c = -|t|^2 / 2`) coherent state. Inner
//! products follow from the Wick pairing of the Bargmann-Fock space,
//! `<z^alpha, z^beta> = alpha! delta_{alpha beta}`.

use crate::error::{Error, Result};
use crate::gaussian::{integrate, GaussianMeasure};
use crate::linalg::{CVec, RVec, C64, I};
use crate::poly::multi_factorial;
use crate::quantization::Quantization;
use crate::span::{CoherentSpan, Representation};

/// Standard `K^H_tau` or normalized `K~^H_tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoloKind {
    Standard,
    Normalized,
}

impl HoloKind {
    pub fn representation(self) -> Representation {
        match self {
            HoloKind::Standard => Representation::HolomorphicStandard,
            HoloKind::Normalized => Representation::HolomorphicNormalized,
        }
    }
}

/// `K^H_tau(xi) = exp({tau, xi} / 2)`, normalized by `exp(-g(tau, tau) / 4)`.
pub fn coherent_h(q: &Quantization, tau: &RVec, kind: HoloKind, xi: &RVec) -> C64 {
    let v = (q.braces(tau, xi) * 0.5).exp();
    match kind {
        HoloKind::Standard => v,
        HoloKind::Normalized => v * (-0.25 * q.g(tau, tau)).exp(),
    }
}

/// `(conj(t), c)` with the term factor `exp(conj(t) . z + c)`.
pub(crate) fn term_exponent(q: &Quantization, rep: Representation, tau: &RVec) -> (CVec, C64) {
    let t = q.z(tau);
    let c = match rep {
        Representation::HolomorphicNormalized => C64::new(-0.5 * t.norm_squared(), 0.0),
        _ => C64::new(0.0, 0.0),
    };
    (t.map(|x| x.conj()), c)
}

fn require_holomorphic(span: &CoherentSpan) -> Result<()> {
    if span.rep().is_schrodinger() {
        Err(Error::RepresentationMismatch {
            expected: "holomorphic",
            found: span.rep().name(),
        })
    } else {
        Ok(())
    }
}

/// Value of a holomorphic span at the point with holomorphic coordinates `z`.
pub fn evaluate_z(q: &Quantization, span: &CoherentSpan, z: &CVec) -> Result<C64> {
    require_holomorphic(span)?;
    let mut total = C64::new(0.0, 0.0);
    for t in span.terms() {
        let (tbar, c) = term_exponent(q, span.rep(), &t.label);
        total += t.coeff * t.poly.eval(z) * (tbar.dot(z) + c).exp();
    }
    Ok(total)
}

/// Value of a holomorphic span at `xi` in `L`.
pub fn evaluate_h(q: &Quantization, span: &CoherentSpan, xi: &RVec) -> Result<C64> {
    evaluate_z(q, span, &q.z(xi))
}

/// Closed-form `<a, b>` over `nu_L`.
pub fn inner_product_h(q: &Quantization, a: &CoherentSpan, b: &CoherentSpan) -> Result<C64> {
    require_holomorphic(a)?;
    if a.rep() != b.rep() {
        return Err(Error::RepresentationMismatch {
            expected: a.rep().name(),
            found: b.rep().name(),
        });
    }
    let mut total = C64::new(0.0, 0.0);
    for t1 in a.terms() {
        let (t1bar, c1) = term_exponent(q, a.rep(), &t1.label);
        let t1v = t1bar.map(|x| x.conj());
        let p1bar = t1.poly.conj();
        for t2 in b.terms() {
            let (t2bar, c2) = term_exponent(q, b.rep(), &t2.label);
            // <p1 e^{t1bar z}, p2 e^{t2bar z}> = e^{t1 . t2bar} sum_alpha alpha! [p1bar(. + t2bar)]_alpha [p2(. + t1)]_alpha
            let left = p1bar.shift(&t2bar);
            let right = t2.poly.shift(&t1v);
            let mut wick = C64::new(0.0, 0.0);
            for (alpha, cl) in left.terms() {
                let cr = right.coeff(alpha);
                if cr != C64::new(0.0, 0.0) {
                    wick += cl * cr * multi_factorial(alpha);
                }
            }
            let core = (t1v.dot(&t2bar) + c1.conj() + c2).exp();
            total += t1.coeff.conj() * t2.coeff * core * wick;
        }
    }
    Ok(total)
}

/// The Gaussian `nu_L` of precision `G / 2`.
pub fn nu_l(q: &Quantization) -> GaussianMeasure {
    GaussianMeasure::new(q.metric() * 0.5).expect("metric is positive definite")
}

/// `<a, b>` by Gauss-Hermite quadrature over `nu_L`; an independent oracle.
pub fn inner_product_h_quadrature(
    q: &Quantization,
    a: &CoherentSpan,
    b: &CoherentSpan,
    order: usize,
) -> Result<C64> {
    require_holomorphic(a)?;
    require_holomorphic(b)?;
    integrate(
        |xi| {
            let va = evaluate_h(q, a, xi).expect("checked representation");
            let vb = evaluate_h(q, b, xi).expect("checked representation");
            va.conj() * vb
        },
        &nu_l(q),
        order,
    )
}

/// Tolerance of the reproducing-property assertion, relative to `max(1, |psi(tau)|)`.
pub const REPRODUCE_TOL: f64 = 1e-10;

/// `<K_tau, psi>`, checked against the pointwise value `psi(tau)`.
pub fn reproduce(q: &Quantization, psi: &CoherentSpan, tau: &RVec) -> Result<C64> {
    require_holomorphic(psi)?;
    let kernel = CoherentSpan::coherent(Representation::HolomorphicStandard, tau);
    // the normalized flavor differs from the standard one only in its term constants
    let std_psi = to_standard(q, psi);
    let inner = inner_product_h(q, &kernel, &std_psi)?;
    let pointwise = evaluate_h(q, psi, tau)?;
    let err = (inner - pointwise).norm();
    if err > REPRODUCE_TOL * pointwise.norm().max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "reproducing property off by {err:.3e}"
        )));
    }
    Ok(inner)
}

/// Rewrites a holomorphic span in the standard flavor.
pub fn to_standard(q: &Quantization, psi: &CoherentSpan) -> CoherentSpan {
    if psi.rep() == Representation::HolomorphicStandard {
        return psi.clone();
    }
    let mut out = psi.like_in(Representation::HolomorphicStandard);
    for t in psi.terms() {
        let mut t2 = t.clone();
        t2.coeff *= (-0.25 * q.g(&t.label, &t.label)).exp();
        out.push(t2).expect("same shape and degree");
    }
    out
}

/// `alpha(xi) = exp(i [xi, xi] / 2 - g(xi, xi) / 4)`.
pub fn alpha_fn(q: &Quantization, xi: &RVec) -> C64 {
    C64::new(-0.25 * q.g(xi, xi), 0.5 * q.phase_space().bracket(xi, xi)).exp()
}

/// Kähler potential `K(xi) = g(xi, xi) / 2`.
pub fn kahler_potential(q: &Quantization, xi: &RVec) -> f64 {
    0.5 * q.g(xi, xi)
}

/// Adapted symplectic potential `Theta(tau, xi) = -i {tau, xi} / 2`.
pub fn theta_adapted(q: &Quantization, tau: &RVec, xi: &RVec) -> C64 {
    -I * q.braces(tau, xi) * 0.5
}

/// Largest `|d f / d conj(z_k)|` at `z` by central differences of step `h`.
pub fn cauchy_riemann_residual<F>(f: F, z: &CVec, h: f64) -> f64
where
    F: Fn(&CVec) -> C64,
{
    let mut worst: f64 = 0.0;
    for k in 0..z.len() {
        let step = |d: C64| {
            let mut zp = z.clone();
            zp[k] += d;
            let mut zm = z.clone();
            zm[k] -= d;
            (f(&zp) - f(&zm)) / (2.0 * h)
        };
        let dx = step(C64::new(h, 0.0));
        let dy = step(C64::new(0.0, h));
        worst = worst.max(((dx + I * dy) * 0.5).norm());
    }
    worst
}

//! Affine phase spaces and their quantization.
//!
//! Points of the affine space `A` are displacement vectors from a fixed anchor,
//! and configurations (points of `C = A / M`) are `Q`-displacements from the
//! anchor's configuration. The symplectic potential is
//! `theta(eta, tau) = theta0 . tau + [eta, tau]`.
//!
//! States are stored relative to a base point `eta` (the frame): a holomorphic
//! state as the function `psi^{H,eta}` on `L` with
//! `psi(zeta) = psi^{H,eta}(zeta - eta) alpha^eta(zeta)`, a Schrödinger state
//! as its `eta`-reduced wave function. In a frame both are ordinary linear
//! spans (normalized holomorphic or reduced Schrödinger flavor), because
//! `K^_{eta + a}` is `exp(-i theta(eta, a) - i [a, a] / 2)` times the linear
//! coherent state with label `a`.

use crate::bargmann::{integrate_reweighted, mu_l_norm, pairing_envelope};
use crate::error::{Error, Result};
use crate::linalg::{to_complex_vec, RMat, RVec, C64, I};
use crate::observables::{apply_c, ComplexObservable, ObservableSpec};
use crate::phase_space::PhaseSpace;
use crate::quantization::Quantization;
use crate::schrodinger::reduced_exponent;
use crate::span::{inner_product, CoherentSpan, Representation, Term};

/// An affine phase space modelled on a linear one.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSpace {
    ps: PhaseSpace,
    theta0: RVec,
}

impl AffineSpace {
    /// `theta0` is `theta(anchor, .)`; it must vanish on `M` so that `theta` descends to `Q`.
    pub fn new(ps: PhaseSpace, theta0: RVec) -> Result<Self> {
        if theta0.len() != ps.dim() {
            return Err(Error::InvalidInput(format!(
                "theta0 has length {}, expected {}",
                theta0.len(),
                ps.dim()
            )));
        }
        let on_m = ps.basis_m().transpose() * &theta0;
        if on_m.amax() > 1e-12 * theta0.amax().max(1.0) {
            return Err(Error::Inadmissible(
                "theta0 must vanish on M for the Schrödinger polarization".into(),
            ));
        }
        Ok(Self { ps, theta0 })
    }

    /// The affine space with `theta(anchor, .) = 0`.
    pub fn linear(ps: PhaseSpace) -> Self {
        let dim = ps.dim();
        Self {
            ps,
            theta0: RVec::zeros(dim),
        }
    }

    pub fn phase_space(&self) -> &PhaseSpace {
        &self.ps
    }

    pub fn theta0(&self) -> &RVec {
        &self.theta0
    }

    /// `theta(eta, tau)`.
    pub fn theta(&self, eta: &RVec, tau: &RVec) -> f64 {
        self.theta0.dot(tau) + self.ps.bracket(eta, tau)
    }

    /// `theta(eta, phi)` for `phi` in `Q`.
    pub fn theta_q(&self, eta: &RVec, phi: &RVec) -> f64 {
        self.theta(eta, &self.ps.include_n(phi))
    }

    /// The configuration `c(eta)`.
    pub fn config(&self, eta: &RVec) -> RVec {
        self.ps.quotient(eta)
    }

    fn check_point(&self, p: &RVec) -> Result<()> {
        if p.len() != self.ps.dim() {
            return Err(Error::InvalidInput(format!(
                "point has length {}, expected {}",
                p.len(),
                self.ps.dim()
            )));
        }
        Ok(())
    }
}

/// `K^H_eta(zeta) = exp(i theta(eta, zeta - eta) / 2 + i theta(zeta, zeta - eta) / 2 - g(zeta - eta) / 4)`.
pub fn affine_coherent_h(aff: &AffineSpace, q: &Quantization, eta: &RVec, zeta: &RVec) -> C64 {
    let d = zeta - eta;
    C64::new(
        -0.25 * q.g(&d, &d),
        0.5 * aff.theta(eta, &d) + 0.5 * aff.theta(zeta, &d),
    )
    .exp()
}

/// `alpha^eta(zeta)`, the same expression as the affine coherent state.
pub fn alpha_eta(aff: &AffineSpace, q: &Quantization, eta: &RVec, zeta: &RVec) -> C64 {
    affine_coherent_h(aff, q, eta, zeta)
}

/// `K^S_zeta(phi) = exp(i theta(zeta, phi - c(zeta)) - Omega(phi - c(zeta), phi - c(zeta)) / 2)`.
pub fn affine_coherent_s(aff: &AffineSpace, q: &Quantization, zeta: &RVec, phi: &RVec) -> C64 {
    let d = phi - aff.config(zeta);
    (I * aff.theta_q(zeta, &d) - q.vacuum_form().eval(&d, &d) * 0.5).exp()
}

/// Phase relating `K^_{eta + a}` in the frame `eta` to the linear coherent state with label `a`.
pub fn frame_phase(aff: &AffineSpace, eta: &RVec, a: &RVec) -> C64 {
    (-I * (aff.theta(eta, a) + 0.5 * aff.ps.bracket(a, a))).exp()
}

/// `beta_{eta, eta'}(phi)`, the quotient of the two `eta'`-reduced affine coherent states.
pub fn base_change(
    aff: &AffineSpace,
    q: &Quantization,
    eta: &RVec,
    eta2: &RVec,
    phi: &RVec,
) -> C64 {
    let delta = eta2 - eta;
    let qd = aff.config(&delta);
    let om = q.vacuum_form();
    (I * aff.theta(eta, &delta) - om.eval(&qd, &qd) * 0.5
        - I * aff.ps.bracket_q(&delta, phi)
        - om.eval(&qd, phi))
    .exp()
}

/// A state written relative to the base point `frame`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSpan {
    frame: RVec,
    span: CoherentSpan,
}

impl AffineSpan {
    /// Wraps a linear span of reduced Schrödinger or normalized holomorphic flavor.
    pub fn new(frame: RVec, span: CoherentSpan) -> Result<Self> {
        match span.rep() {
            Representation::SchrodingerReduced | Representation::HolomorphicNormalized => {}
            other => {
                return Err(Error::RepresentationMismatch {
                    expected: "schrodinger-reduced or holomorphic-normalized",
                    found: other.name(),
                })
            }
        }
        if frame.len() != 2 * span.n() {
            return Err(Error::InvalidInput("frame and span differ in dimension".into()));
        }
        Ok(Self { frame, span })
    }

    /// `K^_zeta` in the frame `eta`.
    pub fn coherent(aff: &AffineSpace, rep: Representation, eta: &RVec, zeta: &RVec) -> Result<Self> {
        aff.check_point(eta)?;
        aff.check_point(zeta)?;
        let a = zeta - eta;
        let span = CoherentSpan::coherent(rep, &a).scale(frame_phase(aff, eta, &a));
        Self::new(eta.clone(), span)
    }

    pub fn frame(&self) -> &RVec {
        &self.frame
    }

    pub fn span(&self) -> &CoherentSpan {
        &self.span
    }

    pub fn rep(&self) -> Representation {
        self.span.rep()
    }

    pub fn add(&self, other: &Self, aff: &AffineSpace, q: &Quantization) -> Result<Self> {
        let other = conjugate_state(aff, q, other, &self.frame)?;
        Ok(Self {
            frame: self.frame.clone(),
            span: self.span.add(&other.span)?,
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            frame: self.frame.clone(),
            span: self.span.scale(s),
        }
    }
}

/// Full holomorphic wave function `psi(zeta) = psi^{H,eta}(zeta - eta) alpha^eta(zeta)`.
pub fn evaluate_affine_h(
    aff: &AffineSpace,
    q: &Quantization,
    psi: &AffineSpan,
    zeta: &RVec,
) -> Result<C64> {
    let inner = crate::holomorphic::evaluate_h(q, &psi.span, &(zeta - &psi.frame))?;
    Ok(inner * alpha_eta(aff, q, &psi.frame, zeta))
}

/// Full Schrödinger wave function `psi(phi) = psi^{S,eta}(phi - c(eta)) K^S_eta(phi)`.
pub fn evaluate_affine_s(
    aff: &AffineSpace,
    q: &Quantization,
    psi: &AffineSpan,
    phi: &RVec,
) -> Result<C64> {
    let inner = crate::schrodinger::evaluate(q, &psi.span, &(phi - aff.config(&psi.frame)))?;
    Ok(inner * affine_coherent_s(aff, q, &psi.frame, phi))
}

/// Rewrites a state relative to the base point `eta2`.
pub fn conjugate_state(
    aff: &AffineSpace,
    q: &Quantization,
    psi: &AffineSpan,
    eta2: &RVec,
) -> Result<AffineSpan> {
    aff.check_point(eta2)?;
    if psi.frame.as_slice() == eta2.as_slice() {
        return Ok(psi.clone());
    }
    let eta = &psi.frame;
    let delta = eta2 - eta;
    let mut out = psi.span.like();
    if psi.rep().is_schrodinger() {
        // psi^{eta2}(phi) = psi^{eta}(phi + q(delta)) beta(phi)
        let qd = to_complex_vec(&aff.config(&delta));
        let om = q.vacuum_form();
        let qdr = aff.config(&delta);
        let beta_const = I * aff.theta(eta, &delta) - om.eval(&qdr, &qdr) * 0.5;
        for t in psi.span.terms() {
            let (a_old, c_old) = reduced_exponent(q, &t.label);
            let label = &t.label - &delta;
            let (_, c_new) = reduced_exponent(q, &label);
            let constant = a_old.dot(&qd) + c_old + beta_const - c_new;
            out.push(Term {
                coeff: t.coeff * constant.exp(),
                label,
                poly: t.poly.shift(&qd),
            })?;
        }
    } else {
        // psi^{eta2}(xi) = psi^{eta}(xi + delta) alpha^eta(eta2 + xi) / alpha^eta2(eta2 + xi)
        let zd = q.z(&delta);
        let alpha = alpha_eta(aff, q, eta, eta2);
        for t in psi.span.terms() {
            let label = &t.label - &delta;
            let k = crate::holomorphic::coherent_h(
                q,
                &t.label,
                crate::holomorphic::HoloKind::Normalized,
                &delta,
            );
            let constant = k * alpha * (0.25 * q.g(&label, &label)).exp();
            out.push(Term {
                coeff: t.coeff * constant,
                label,
                poly: t.poly.shift(&zd),
            })?;
        }
    }
    AffineSpan::new(eta2.clone(), out)
}

/// `<a, b>`, computed in the frame of `a`.
pub fn inner_product_affine(
    aff: &AffineSpace,
    q: &Quantization,
    a: &AffineSpan,
    b: &AffineSpan,
) -> Result<C64> {
    let b = conjugate_state(aff, q, b, &a.frame)?;
    inner_product(q, &a.span, &b.span)
}

/// The affine transform: label-wise `K^S_zeta <-> K^H_zeta`, in either direction.
pub fn transform_affine(q: &Quantization, psi: &AffineSpan) -> Result<AffineSpan> {
    AffineSpan::new(psi.frame.clone(), crate::bargmann::transform(q, &psi.span)?)
}

/// `<eta_h, B^ psi> = int conj(eta_h(zeta)) psi(c(zeta)) d mu_A(zeta)` by quadrature.
///
/// `eta_h` is a full holomorphic and `psi_s` a full Schrödinger wave function.
pub fn pairing_affine<FH, FS>(
    aff: &AffineSpace,
    q: &Quantization,
    eta_h: FH,
    psi_s: FS,
    order: usize,
) -> Result<C64>
where
    FH: Fn(&RVec) -> C64,
    FS: Fn(&RVec) -> C64,
{
    let dim = aff.ps.dim();
    integrate_reweighted(
        |zeta| eta_h(zeta).conj() * psi_s(&aff.config(zeta)),
        mu_l_norm(q),
        &RMat::zeros(dim, dim),
        &pairing_envelope(q),
        order,
    )
}

/// `<psi, B^^{-1} eta_h> = int conj(psi(c(zeta))) eta_h(zeta) d mu_A(zeta)` by quadrature.
pub fn pairing_affine_inverse<FS, FH>(
    aff: &AffineSpace,
    q: &Quantization,
    psi_s: FS,
    eta_h: FH,
    order: usize,
) -> Result<C64>
where
    FS: Fn(&RVec) -> C64,
    FH: Fn(&RVec) -> C64,
{
    Ok(pairing_affine(aff, q, eta_h, psi_s, order)?.conj())
}

/// `F^ psi` for an affine observable `F(anchor + zeta) = F.constant + f . zeta`.
///
/// In the frame `eta` this is the linear action with constant term `F(eta)`.
pub fn apply_affine_observable(
    q: &Quantization,
    obs: &ObservableSpec,
    psi: &AffineSpan,
) -> Result<AffineSpan> {
    let lin = ComplexObservable::from_real(obs);
    let at_frame = ComplexObservable::new(
        q.phase_space(),
        lin.f().clone(),
        C64::new(obs.eval(&psi.frame), 0.0),
    );
    AffineSpan::new(psi.frame.clone(), apply_c(q, &at_frame, &psi.span)?)
}

/// `<K^_zeta, psi>`, checked against the pointwise value `psi(zeta)`.
pub fn reproduce_affine(
    aff: &AffineSpace,
    q: &Quantization,
    psi: &AffineSpan,
    zeta: &RVec,
) -> Result<C64> {
    let k = AffineSpan::coherent(aff, Representation::HolomorphicNormalized, &psi.frame, zeta)?;
    let inner = inner_product_affine(aff, q, &k, psi)?;
    let pointwise = evaluate_affine_h(aff, q, psi, zeta)?;
    let err = (inner - pointwise).norm();
    if err > crate::holomorphic::REPRODUCE_TOL * pointwise.norm().max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "affine reproducing property off by {err:.3e}"
        )));
    }
    Ok(inner)
}

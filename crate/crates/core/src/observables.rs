//! Quantized linear observables acting on coherent spans.
//!
//! Both representations act symbolically: on a term `p * (coherent state)` an
//! observable returns `p' * (same coherent state)`, where `p'` is `p` times an
//! affine multiplier plus a formal directional derivative. Complex observables
//! (complex covectors) act by complex-linear extension; they realize the
//! creation and annihilation parts and the transport of prefactors under the
//! Segal-Bargmann transform.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{to_complex_mat, CVec, RVec, C64, I};
use crate::phase_space::PhaseSpace;
use crate::poly::Poly;
use crate::quantization::Quantization;
use crate::span::{inner_product, norm, CoherentSpan, Representation, Term};

/// `F(xi) = f . xi + constant` with Hamiltonian vector `X_F`, `2 omega(xi, X_F) = f . xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpec {
    f: RVec,
    constant: f64,
    x_f: RVec,
}

impl ObservableSpec {
    pub fn linear(ps: &PhaseSpace, f: RVec) -> Result<Self> {
        Self::affine(ps, f, 0.0)
    }

    pub fn affine(ps: &PhaseSpace, f: RVec, constant: f64) -> Result<Self> {
        if f.len() != ps.dim() {
            return Err(Error::InvalidInput(format!(
                "covector has length {}, expected {}",
                f.len(),
                ps.dim()
            )));
        }
        let x_f = hamiltonian_vector(ps, &f);
        Ok(Self { f, constant, x_f })
    }

    pub fn f(&self) -> &RVec {
        &self.f
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn x_f(&self) -> &RVec {
        &self.x_f
    }

    pub fn eval(&self, xi: &RVec) -> f64 {
        self.f.dot(xi) + self.constant
    }
}

/// Solves `2 omega(xi, X) = f . xi`, i.e. `X = (2W)^{-1} f`.
pub fn hamiltonian_vector(ps: &PhaseSpace, f: &RVec) -> RVec {
    ps.two_w_inv() * f
}

/// A complex-linear observable `F(xi) = f . xi + constant` with complex `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexObservable {
    f: CVec,
    constant: C64,
    x: CVec,
}

impl ComplexObservable {
    pub fn new(ps: &PhaseSpace, f: CVec, constant: C64) -> Self {
        let x = to_complex_mat(ps.two_w_inv()) * &f;
        Self { f, constant, x }
    }

    pub fn from_real(obs: &ObservableSpec) -> Self {
        Self {
            f: obs.f.map(|v| C64::new(v, 0.0)),
            constant: C64::new(obs.constant, 0.0),
            x: obs.x_f.map(|v| C64::new(v, 0.0)),
        }
    }

    pub fn f(&self) -> &CVec {
        &self.f
    }

    pub fn x(&self) -> &CVec {
        &self.x
    }

    pub fn constant(&self) -> C64 {
        self.constant
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            f: &self.f * s,
            constant: self.constant * s,
            x: &self.x * s,
        }
    }
}

/// `F^+ = (F - i F o J) / 2` and `F^- = (F + i F o J) / 2` as covectors.
pub fn split_pm(q: &Quantization, f: &CVec) -> (CVec, CVec) {
    let jt_f = q.j_complex().transpose() * f;
    let plus = (f - &jt_f * I) * C64::new(0.5, 0.0);
    let minus = (f + &jt_f * I) * C64::new(0.5, 0.0);
    (plus, minus)
}

/// Creation part `F^+` as an observable.
pub fn creation_part(q: &Quantization, obs: &ComplexObservable) -> ComplexObservable {
    ComplexObservable::new(q.phase_space(), split_pm(q, obs.f()).0, C64::new(0.0, 0.0))
}

/// Annihilation part `F^-` as an observable.
pub fn annihilation_part(q: &Quantization, obs: &ComplexObservable) -> ComplexObservable {
    ComplexObservable::new(q.phase_space(), split_pm(q, obs.f()).1, C64::new(0.0, 0.0))
}

/// Prefactor of `F^ (p k_tau)` in the Schrödinger representation.
///
/// Full flavor: `-[X, phi] p K - i D_v (p K)` with `v = q(X)` and
/// `K = exp(a . phi + c) K_0`. Reduced flavor: the multiplier gains
/// `i Omega(v, phi)` and the derivative drops the vacuum.
pub(crate) fn schrodinger_term_action(
    q: &Quantization,
    obs: &ComplexObservable,
    rep: Representation,
    tau: &RVec,
    p: &Poly,
) -> Poly {
    let ps = q.phase_space();
    let n = ps.n();
    let v = ps.quotient_c(obs.x());
    let lambda_x = ps.bracket_covector_c(obs.x());
    let (a, _) = crate::schrodinger::reduced_exponent(q, tau);
    let omega_v = q.omega_matrix() * &v;
    let av = a.dot(&v);
    let deriv = p.directional_derivative(&v).add(&p.scale(av));
    match rep {
        Representation::SchrodingerFull => {
            let mult = Poly::linear(&(-&lambda_x), obs.constant());
            // d/dv K_0 = -Omega(v, phi) K_0
            let vac = Poly::linear(&(-&omega_v), C64::new(0.0, 0.0)).mul(p);
            mult.mul(p).sub(&deriv.add(&vac).scale(I))
        }
        Representation::SchrodingerReduced => {
            let mult = Poly::linear(&(-&lambda_x + &omega_v * I), obs.constant());
            mult.mul(p).sub(&deriv.scale(I))
        }
        _ => unreachable!("holomorphic representation {n}"),
    }
}

/// Prefactor of `F^ (p K_tau)` in the holomorphic representation:
/// `F^+ p - i D_{X_{F^-}} p` with `F^+` written in `z` and the derivative
/// acting on both the prefactor and the coherent exponent.
pub(crate) fn holomorphic_term_action(
    q: &Quantization,
    obs: &ComplexObservable,
    tau: &RVec,
    p: &Poly,
) -> Poly {
    let (fplus, fminus) = split_pm(q, obs.f());
    let u = q.u().map(|x| C64::new(x * SQRT_2, 0.0));
    let h = u.transpose() * &fplus;
    let x_minus = to_complex_mat(q.phase_space().two_w_inv()) * &fminus;
    let w = q.z_c(&x_minus);
    let tbar = q.z(tau).map(|x| x.conj());
    let mult = Poly::linear(&h, obs.constant());
    let deriv = p.directional_derivative(&w).add(&p.scale(tbar.dot(&w)));
    mult.mul(p).sub(&deriv.scale(I))
}

/// Applies a complex observable to a span in any representation.
pub fn apply_c(q: &Quantization, obs: &ComplexObservable, span: &CoherentSpan) -> Result<CoherentSpan> {
    let mut out = span.like();
    for t in span.terms() {
        let poly = if span.rep().is_schrodinger() {
            schrodinger_term_action(q, obs, span.rep(), &t.label, &t.poly)
        } else {
            holomorphic_term_action(q, obs, &t.label, &t.poly)
        };
        out.push(Term {
            coeff: t.coeff,
            label: t.label.clone(),
            poly,
        })?;
    }
    Ok(out)
}

/// `F^ psi` for a real observable in the representation of `span`.
pub fn apply(q: &Quantization, obs: &ObservableSpec, span: &CoherentSpan) -> Result<CoherentSpan> {
    apply_c(q, &ComplexObservable::from_real(obs), span)
}

pub fn apply_schrodinger(
    q: &Quantization,
    obs: &ObservableSpec,
    span: &CoherentSpan,
) -> Result<CoherentSpan> {
    if !span.rep().is_schrodinger() {
        return Err(Error::RepresentationMismatch {
            expected: "schrodinger",
            found: span.rep().name(),
        });
    }
    apply(q, obs, span)
}

pub fn apply_holomorphic(
    q: &Quantization,
    obs: &ObservableSpec,
    span: &CoherentSpan,
) -> Result<CoherentSpan> {
    if span.rep().is_schrodinger() {
        return Err(Error::RepresentationMismatch {
            expected: "holomorphic",
            found: span.rep().name(),
        });
    }
    apply(q, obs, span)
}

/// `-2i omega(X_F, X_G)`, bilinear in complex observables.
pub fn ccr_constant(q: &Quantization, f: &ComplexObservable, g: &ComplexObservable) -> C64 {
    let w = to_complex_mat(q.phase_space().w());
    -I * 2.0 * f.x().dot(&(w * g.x()))
}

/// Result of comparing `[F^, G^] psi` with `-2i omega(X_F, X_G) psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorCheck {
    /// `<psi, [F^, G^] psi> / <psi, psi>`.
    pub constant: C64,
    pub expected: C64,
    /// `|| [F^, G^] psi - expected psi || / || psi ||`.
    pub deviation: f64,
}

impl CommutatorCheck {
    pub fn max_error(&self) -> f64 {
        (self.constant - self.expected).norm().max(self.deviation)
    }
}

pub fn commutator_defect_c(
    q: &Quantization,
    f: &ComplexObservable,
    g: &ComplexObservable,
    psi: &CoherentSpan,
) -> Result<CommutatorCheck> {
    let fg = apply_c(q, f, &apply_c(q, g, psi)?)?;
    let gf = apply_c(q, g, &apply_c(q, f, psi)?)?;
    let comm = fg.sub(&gf)?.simplify();
    let psi_sq = inner_product(q, psi, psi)?;
    let constant = inner_product(q, psi, &comm)? / psi_sq;
    let expected = ccr_constant(q, f, g);
    let residual = comm.sub(&psi.scale(expected))?.simplify();
    let deviation = norm(q, &residual)? / psi_sq.re.sqrt();
    Ok(CommutatorCheck {
        constant,
        expected,
        deviation,
    })
}

pub fn commutator_defect(
    q: &Quantization,
    f: &ObservableSpec,
    g: &ObservableSpec,
    psi: &CoherentSpan,
) -> Result<CommutatorCheck> {
    commutator_defect_c(
        q,
        &ComplexObservable::from_real(f),
        &ComplexObservable::from_real(g),
        psi,
    )
}

/// Ceiling on the series degree before giving up.
pub const MAX_SERIES_DEGREE: usize = 96;

/// Required bound on the relative norm of the truncated tail.
pub const SERIES_TAIL_TOL: f64 = 1e-10;

/// `exp(F^+) K_0` by its power series and the predicted label `tau = -J X_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpCreation {
    pub series: CoherentSpan,
    pub tau: RVec,
    /// Truncation degree.
    pub degree: usize,
    /// `|| tail || / || exp(F^+) K_0 ||`, exact because the series terms are orthogonal.
    pub tail_bound: f64,
    /// `|<K_tau, series>| / (||K_tau|| ||series||)`.
    pub fidelity: f64,
}

pub fn exp_creation_on_vacuum(q: &Quantization, obs: &ObservableSpec) -> Result<ExpCreation> {
    let plus = creation_part(q, &ComplexObservable::from_real(obs));
    let vacuum = CoherentSpan::vacuum(Representation::HolomorphicStandard, q.n());
    // c = ||F^+ K_0||^2 and ||(F^+)^k K_0 / k!||^2 = c^k / k!
    let c = norm(q, &apply_c(q, &plus, &vacuum)?)?.powi(2);
    let (degree, tail_bound) = series_degree(c)?;
    let vacuum = vacuum.with_degree_cap(degree);
    let mut power = vacuum.clone();
    let mut series = vacuum.clone();
    for k in 1..=degree {
        power = apply_c(q, &plus, &power)?.scale(C64::new(1.0 / k as f64, 0.0));
        series = series.add(&power)?;
    }
    let series = series.simplify();
    let tau = -(q.j() * obs.x_f());
    let target = CoherentSpan::coherent(Representation::HolomorphicStandard, &tau);
    let overlap = inner_product(q, &target, &series)?;
    let fidelity = overlap.norm() / (norm(q, &target)? * norm(q, &series)?);
    Ok(ExpCreation {
        series,
        tau,
        degree,
        tail_bound,
        fidelity,
    })
}

/// Smallest degree whose relative tail `sqrt(sum_{k>K} c^k/k! / e^c)` is below tolerance.
fn series_degree(c: f64) -> Result<(usize, f64)> {
    let mut terms = vec![1.0f64];
    for k in 1..=MAX_SERIES_DEGREE + 64 {
        let next = terms[k - 1] * c / k as f64;
        terms.push(next);
    }
    let total = c.exp();
    for degree in crate::span::DEFAULT_DEGREE_CAP..=MAX_SERIES_DEGREE {
        let tail: f64 = terms[degree + 1..].iter().sum();
        let rel = (tail / total).sqrt();
        if rel <= SERIES_TAIL_TOL {
            return Ok((degree, rel));
        }
    }
    let tail: f64 = terms[MAX_SERIES_DEGREE + 1..].iter().sum();
    Err(Error::SeriesTail {
        tail: (tail / total).sqrt(),
        tolerance: SERIES_TAIL_TOL,
        degree: MAX_SERIES_DEGREE,
    })
}

/// `|| B F^ psi - F^ B psi || / || psi ||` for a Schrödinger span `psi`.
pub fn intertwine_defect(q: &Quantization, obs: &ObservableSpec, psi: &CoherentSpan) -> Result<f64> {
    let lhs = crate::bargmann::transform(q, &apply(q, obs, psi)?)?;
    let rhs = apply(q, obs, &crate::bargmann::transform(q, psi)?)?;
    let diff = lhs.sub(&rhs)?.simplify();
    let psi_norm = norm(q, psi)?;
    Ok(norm(q, &diff)? / psi_norm)
}

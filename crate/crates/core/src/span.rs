//! Finite sums of polynomial prefactors times coherent states.

use crate::error::{Error, Result};
use crate::linalg::{RVec, C64};
use crate::poly::Poly;
use crate::quantization::Quantization;

/// Default bound on the total degree of a prefactor.
pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Which wave functions the terms of a span stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `p(phi) K^S_tau(phi)` on `Q`, inner product over `mu_Q`.
    SchrodingerFull,
    /// `p(phi) k^S_tau(phi)` on `Q`, inner product over `nu_Q`.
    SchrodingerReduced,
    /// `p(z) K^H_tau(xi)` on `L`, inner product over `nu_L`.
    HolomorphicStandard,
    /// `p(z) K~^H_tau(xi)` on `L`, inner product over `nu_L`.
    HolomorphicNormalized,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Self::SchrodingerFull => "schrodinger-full",
            Self::SchrodingerReduced => "schrodinger-reduced",
            Self::HolomorphicStandard => "holomorphic",
            Self::HolomorphicNormalized => "holomorphic-normalized",
        }
    }

    pub fn is_schrodinger(self) -> bool {
        matches!(self, Self::SchrodingerFull | Self::SchrodingerReduced)
    }

    /// The representation on the other side of the Segal-Bargmann transform.
    pub fn partner(self) -> Self {
        match self {
            Self::SchrodingerFull => Self::HolomorphicStandard,
            Self::SchrodingerReduced => Self::HolomorphicNormalized,
            Self::HolomorphicStandard => Self::SchrodingerFull,
            Self::HolomorphicNormalized => Self::SchrodingerReduced,
        }
    }
}

/// `coeff * poly * (coherent state labelled by label)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub label: RVec,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSpan {
    rep: Representation,
    n: usize,
    degree_cap: usize,
    terms: Vec<Term>,
}

impl CoherentSpan {
    pub fn empty(rep: Representation, n: usize) -> Self {
        Self {
            rep,
            n,
            degree_cap: DEFAULT_DEGREE_CAP,
            terms: Vec::new(),
        }
    }

    /// The single coherent state with label `tau`.
    pub fn coherent(rep: Representation, tau: &RVec) -> Self {
        let n = tau.len() / 2;
        let mut s = Self::empty(rep, n);
        s.terms.push(Term {
            coeff: C64::new(1.0, 0.0),
            label: tau.clone(),
            poly: Poly::one(n),
        });
        s
    }

    /// The vacuum (label zero).
    pub fn vacuum(rep: Representation, n: usize) -> Self {
        Self::coherent(rep, &RVec::zeros(2 * n))
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn rep(&self) -> Representation {
        self.rep
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|t| t.poly.degree()).max().unwrap_or(0)
    }

    pub fn push(&mut self, term: Term) -> Result<()> {
        if term.label.len() != 2 * self.n || term.poly.nvars() != self.n {
            return Err(Error::InvalidInput("term shape does not match span".into()));
        }
        let degree = term.poly.degree();
        if degree > self.degree_cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree_cap,
            });
        }
        self.terms.push(term);
        Ok(())
    }

    /// Same representation and cap, no terms.
    pub fn like(&self) -> Self {
        Self {
            rep: self.rep,
            n: self.n,
            degree_cap: self.degree_cap,
            terms: Vec::new(),
        }
    }

    /// Same cap and dimension, different representation, no terms.
    pub fn like_in(&self, rep: Representation) -> Self {
        Self { rep, ..self.like() }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.rep != other.rep {
            return Err(Error::RepresentationMismatch {
                expected: self.rep.name(),
                found: other.rep.name(),
            });
        }
        if self.n != other.n {
            return Err(Error::InvalidInput("spans over different phase spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.degree_cap = self.degree_cap.max(other.degree_cap);
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= s;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Merges terms with bit-identical labels and folds coefficients into prefactors.
    ///
    /// Differences of spans built along two exact paths then cancel coefficientwise,
    /// so their norms are not swamped by cancellation in the Gram expansion.
    pub fn simplify(&self) -> Self {
        let mut out = self.like();
        for t in &self.terms {
            let p = t.poly.scale(t.coeff);
            if let Some(existing) = out
                .terms
                .iter_mut()
                .find(|e| e.label.as_slice() == t.label.as_slice())
            {
                existing.poly = existing.poly.add(&p);
            } else {
                out.terms.push(Term {
                    coeff: C64::new(1.0, 0.0),
                    label: t.label.clone(),
                    poly: p,
                });
            }
        }
        out.terms.retain(|t| !t.poly.is_zero());
        out
    }
}

/// `<a, b>`, conjugate-linear in `a`.
pub fn inner_product(q: &Quantization, a: &CoherentSpan, b: &CoherentSpan) -> Result<C64> {
    a.check_same(b)?;
    if a.rep.is_schrodinger() {
        crate::schrodinger::inner_product(q, a, b)
    } else {
        crate::holomorphic::inner_product_h(q, a, b)
    }
}

pub fn norm(q: &Quantization, a: &CoherentSpan) -> Result<f64> {
    Ok(inner_product(q, a, a)?.re.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn degree_cap_enforced() {
        let mut s = CoherentSpan::empty(Representation::SchrodingerReduced, 1).with_degree_cap(2);
        let err = s.push(Term {
            coeff: c(1.0, 0.0),
            label: RVec::zeros(2),
            poly: Poly::monomial(vec![3], c(1.0, 0.0)),
        });
        assert_eq!(err, Err(Error::DegreeCap { degree: 3, cap: 2 }));
    }

    #[test]
    fn simplify_cancels_exactly() {
        let tau = RVec::from_vec(vec![0.3, -0.1]);
        let s = CoherentSpan::coherent(Representation::HolomorphicStandard, &tau);
        let d = s.sub(&s).unwrap().simplify();
        assert!(d.is_empty());
    }

    #[test]
    fn mixed_representations_rejected() {
        let a = CoherentSpan::vacuum(Representation::SchrodingerFull, 1);
        let b = CoherentSpan::vacuum(Representation::SchrodingerReduced, 1);
        assert!(a.add(&b).is_err());
    }
}

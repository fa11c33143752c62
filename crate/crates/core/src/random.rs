//! Seeded random instances for property tests, acceptance checks and the CLI.
//!
//! Instances are kept well conditioned: perturbations of the identity for
//! frames, symplectic rotations of bounded size for complex structures, and
//! labels of order one so that coherent-state exponentials stay moderate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::correspondence::{ComplexStructure, VacuumForm};
use crate::error::Result;
use crate::linalg::{sym_sqrt_pair, symmetrize, RMat, RVec, C64};
use crate::phase_space::PhaseSpace;
use crate::poly::Poly;
use crate::span::{CoherentSpan, Representation, Term};

/// The generator used throughout the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normal_vec<R: Rng>(rng: &mut R, len: usize, scale: f64) -> RVec {
    RVec::from_fn(len, |_, _| scale * normal(rng))
}

pub fn normal_mat<R: Rng>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> RMat {
    RMat::from_fn(rows, cols, |_, _| scale * normal(rng))
}

/// `exp(E)` with `E` Gaussian of entry size `eps / sqrt(d)`; invertible with bounded condition.
fn near_identity<R: Rng>(rng: &mut R, d: usize, eps: f64) -> RMat {
    normal_mat(rng, d, d, eps / (d as f64).sqrt()).exp()
}

/// A phase space with `T = P^{-T} [[0, 0], [K, 0]] P^{-1}` for random `P` and `K`.
pub fn random_phase_space<R: Rng>(rng: &mut R, n: usize) -> Result<PhaseSpace> {
    let dim = 2 * n;
    let p = near_identity(rng, dim, 0.3);
    let k = near_identity(rng, n, 0.3);
    let mut block = RMat::zeros(dim, dim);
    block.view_mut((n, 0), (n, n)).copy_from(&k);
    let p_inv = p.try_inverse().expect("matrix exponential");
    PhaseSpace::new(p_inv.transpose() * block * p_inv)
}

/// `J = R J_ref R^{-1}` with `J_ref = -|W|^{-1} W` and `R = exp(eps W^{-1} H)` symplectic.
pub fn random_complex_structure<R: Rng>(
    rng: &mut R,
    ps: &PhaseSpace,
    eps: f64,
) -> Result<ComplexStructure> {
    let dim = ps.dim();
    let w = ps.w();
    let (_, abs_w_inv) = sym_sqrt_pair(&(w.transpose() * w));
    let j_ref = -(abs_w_inv * w);
    let h = symmetrize(&normal_mat(rng, dim, dim, 1.0 / (dim as f64).sqrt()));
    let w_inv = w.clone().try_inverse().expect("nondegenerate");
    let gen = w_inv * h * eps;
    let r = gen.exp();
    let r_inv = (-gen).exp();
    ComplexStructure::new(ps, r * j_ref * r_inv)
}

/// `Omega = S + iA` with `S = R^T R + eps I` and symmetric `A`.
pub fn random_vacuum_form<R: Rng>(rng: &mut R, n: usize) -> Result<VacuumForm> {
    let r = near_identity(rng, n, 0.4);
    let s = symmetrize(&(r.transpose() * r + RMat::identity(n, n) * 0.2));
    let a = symmetrize(&normal_mat(rng, n, n, 0.5 / (n as f64).sqrt()));
    VacuumForm::new(s, a)
}

/// A phase-space label of typical size `scale`.
pub fn random_label<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> RVec {
    normal_vec(rng, dim, scale / (dim as f64).sqrt())
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// A random polynomial in `nvars` variables with total degree at most `degree`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, degree: usize, monomials: usize) -> Poly {
    let mut p = Poly::constant(nvars, random_complex(rng));
    for _ in 0..monomials {
        let d = rng.random_range(0..=degree);
        let mut alpha = vec![0u32; nvars];
        for _ in 0..d {
            alpha[rng.random_range(0..nvars)] += 1;
        }
        p.add_term(alpha, random_complex(rng) * 0.5);
    }
    p
}

/// A span of `terms` coherent states with random labels and coefficients.
pub fn random_coherent_span<R: Rng>(
    rng: &mut R,
    rep: Representation,
    n: usize,
    terms: usize,
    scale: f64,
) -> CoherentSpan {
    let mut s = CoherentSpan::empty(rep, n);
    for _ in 0..terms {
        s.push(Term {
            coeff: random_complex(rng),
            label: random_label(rng, 2 * n, scale),
            poly: Poly::one(n),
        })
        .expect("degree zero");
    }
    s
}

/// Like [`random_coherent_span`] with polynomial prefactors of degree at most `degree`.
pub fn random_span<R: Rng>(
    rng: &mut R,
    rep: Representation,
    n: usize,
    terms: usize,
    degree: usize,
    scale: f64,
) -> CoherentSpan {
    let mut s = CoherentSpan::empty(rep, n);
    for _ in 0..terms {
        s.push(Term {
            coeff: random_complex(rng),
            label: random_label(rng, 2 * n, scale),
            poly: random_poly(rng, n, degree, 2),
        })
        .expect("within default cap");
    }
    s
}

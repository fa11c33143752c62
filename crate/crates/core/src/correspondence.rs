//! Compatible complex structures `J` on `L` and vacuum forms `Omega` on `Q`,
//! and the one-to-one correspondence between them.

use crate::error::{Error, Result};
use crate::linalg::{
    guarded_inverse, is_symmetric, min_eigenvalue, symmetrize, to_complex_mat, CMat, RMat, RVec,
    C64, I,
};
use crate::phase_space::PhaseSpace;

/// Entrywise tolerance for the complex-structure invariants.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// A complex structure compatible with the symplectic form and with positive metric.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    j: RMat,
}

/// Residuals of the three defining properties of a complex structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureDefects {
    /// `max |J J + I|`.
    pub square: f64,
    /// `max |J^T W J - W|`.
    pub symplectic: f64,
    /// Smallest eigenvalue of the symmetrized `2 W J`.
    pub metric_min_eigenvalue: f64,
    /// `max |G - G^T|`.
    pub metric_asymmetry: f64,
}

impl StructureDefects {
    pub fn of(ps: &PhaseSpace, j: &RMat) -> Self {
        let dim = ps.dim();
        let g = ps.w() * j * 2.0;
        Self {
            square: (j * j + RMat::identity(dim, dim)).amax(),
            symplectic: (j.transpose() * ps.w() * j - ps.w()).amax(),
            metric_min_eigenvalue: min_eigenvalue(&symmetrize(&g)),
            metric_asymmetry: (&g - g.transpose()).amax(),
        }
    }
}

impl ComplexStructure {
    pub fn new(ps: &PhaseSpace, j: RMat) -> Result<Self> {
        if j.shape() != (ps.dim(), ps.dim()) {
            return Err(Error::InvalidInput(format!(
                "complex structure must be {0}x{0}",
                ps.dim()
            )));
        }
        let d = StructureDefects::of(ps, &j);
        let scale = j.amax().max(1.0).powi(2);
        let g_scale = (ps.w() * &j).amax().max(1.0) * 2.0;
        if d.square > STRUCTURE_TOL * scale {
            return Err(Error::NotComplexStructure(format!(
                "J^2 + I has entry {:.3e}",
                d.square
            )));
        }
        if d.symplectic > STRUCTURE_TOL * scale * ps.w().amax().max(1.0) {
            return Err(Error::NotComplexStructure(format!(
                "J^T W J - W has entry {:.3e}",
                d.symplectic
            )));
        }
        if d.metric_asymmetry > STRUCTURE_TOL * g_scale
            || d.metric_min_eigenvalue <= STRUCTURE_TOL * g_scale
        {
            return Err(Error::NotComplexStructure(format!(
                "metric 2WJ not positive definite (min eigenvalue {:.3e})",
                d.metric_min_eigenvalue
            )));
        }
        Ok(Self { j })
    }

    pub fn matrix(&self) -> &RMat {
        &self.j
    }
}

/// `Omega(phi, phi') = phi^T (S + iA) phi'` with `S` positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumForm {
    s: RMat,
    a: RMat,
}

impl VacuumForm {
    pub fn new(s: RMat, a: RMat) -> Result<Self> {
        if !s.is_square() || s.shape() != a.shape() {
            return Err(Error::NotVacuumForm("S and A must be square of equal size".into()));
        }
        if !is_symmetric(&s, 1e-12) || !is_symmetric(&a, 1e-12) {
            return Err(Error::NotVacuumForm("S and A must be symmetric".into()));
        }
        if min_eigenvalue(&s) <= 0.0 {
            return Err(Error::NotVacuumForm("S must be positive definite".into()));
        }
        Ok(Self { s, a })
    }

    pub fn s(&self) -> &RMat {
        &self.s
    }

    pub fn a(&self) -> &RMat {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.s.nrows()
    }

    /// `S + iA` as a complex matrix.
    pub fn complex_matrix(&self) -> CMat {
        CMat::from_fn(self.n(), self.n(), |r, c| {
            C64::new(self.s[(r, c)], self.a[(r, c)])
        })
    }

    pub fn eval(&self, phi: &RVec, phi2: &RVec) -> C64 {
        C64::new(phi.dot(&(&self.s * phi2)), phi.dot(&(&self.a * phi2)))
    }

    pub fn max_abs_diff(&self, other: &VacuumForm) -> f64 {
        (&self.s - &other.s).amax().max((&self.a - &other.a).amax())
    }
}

/// `G = 2 W J`.
pub fn metric(ps: &PhaseSpace, cs: &ComplexStructure) -> RMat {
    symmetrize(&(ps.w() * cs.matrix() * 2.0))
}

/// `{tau, xi} = g(tau, xi) + 2i omega(tau, xi)`.
pub fn braces(ps: &PhaseSpace, cs: &ComplexStructure, tau: &RVec, xi: &RVec) -> C64 {
    let g = metric(ps, cs);
    C64::new(tau.dot(&(&g * xi)), 2.0 * ps.omega(tau, xi))
}

/// The map `j: Q -> L` with `q(j(phi)) = phi` and image `J M`, as a `2n x n` matrix.
pub fn j_map(ps: &PhaseSpace, cs: &ComplexStructure) -> RMat {
    let jm = cs.matrix() * ps.basis_m();
    let qjm = ps.quotient_matrix() * &jm;
    let inv = qjm
        .try_inverse()
        .expect("J M is a complement of M for a compatible J");
    jm * inv
}

/// `Omega(phi, phi') = g(j phi, j phi') - i [j phi, phi']`.
pub fn omega_from_j(ps: &PhaseSpace, cs: &ComplexStructure) -> VacuumForm {
    let g = metric(ps, cs);
    let jm = j_map(ps, cs);
    let s = symmetrize(&(jm.transpose() * g * &jm));
    let a = symmetrize(&(-(jm.transpose() * ps.t_n())));
    VacuumForm { s, a }
}

/// Reconstructs the complex structure of a vacuum form.
///
/// `X` is the graph over `N` on which `[x, phi] = -Im Omega(q x, phi)`, and
/// `beta: X -> M` solves `[beta x, phi] = -Re Omega(q x, phi)`. Then `J` acts
/// as `beta` on `X` and as `-beta^{-1}` on `M`.
pub fn j_from_omega(ps: &PhaseSpace, omega: &VacuumForm) -> Result<ComplexStructure> {
    let n = ps.n();
    if omega.n() != n {
        return Err(Error::InvalidInput(format!(
            "vacuum form has size {}, phase space has n = {n}",
            omega.n()
        )));
    }
    let pmn_inv_t = guarded_inverse(&ps.pairing_mn().transpose(), "M x N pairing")?;
    let x_basis = ps.basis_n() - ps.basis_m() * (&pmn_inv_t * omega.a());
    let b_beta = -(&pmn_inv_t * omega.s());
    let b_beta_inv = guarded_inverse(&b_beta, "beta")?;
    let dim = ps.dim();
    let mut r = RMat::zeros(dim, dim);
    r.view_mut((0, 0), (dim, n)).copy_from(&x_basis);
    r.view_mut((0, n), (dim, n)).copy_from(ps.basis_m());
    let r_inv = guarded_inverse(&r, "X + M frame")?;
    let mut block = RMat::zeros(dim, dim);
    block.view_mut((n, 0), (n, n)).copy_from(&b_beta);
    block.view_mut((0, n), (n, n)).copy_from(&(-b_beta_inv));
    ComplexStructure::new(ps, &r * block * r_inv)
}

/// `P^+ = (I - iJ) / 2`, the projector onto the holomorphic subspace.
pub fn holo_projector(cs: &ComplexStructure) -> CMat {
    let dim = cs.matrix().nrows();
    (CMat::identity(dim, dim) - to_complex_mat(cs.matrix()) * I) * C64::new(0.5, 0.0)
}

/// Blocks of `J` in the `(N, M)` basis: `A: N -> N`, `B: M -> N`, `C: M -> M`, `D: N -> M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Abcd {
    pub a: RMat,
    pub b: RMat,
    pub c: RMat,
    pub d: RMat,
}

impl Abcd {
    /// Reassembles `J` from its blocks.
    pub fn assemble(&self, ps: &PhaseSpace) -> RMat {
        let n = ps.n();
        let dim = ps.dim();
        let mut block = RMat::zeros(dim, dim);
        block.view_mut((0, 0), (n, n)).copy_from(&self.a);
        block.view_mut((0, n), (n, n)).copy_from(&self.b);
        block.view_mut((n, 0), (n, n)).copy_from(&self.d);
        block.view_mut((n, n), (n, n)).copy_from(&self.c);
        let mut frame = RMat::zeros(dim, dim);
        frame.view_mut((0, 0), (dim, n)).copy_from(ps.basis_n());
        frame.view_mut((0, n), (dim, n)).copy_from(ps.basis_m());
        frame * block * ps.frame_inv()
    }
}

pub fn abcd_from_j(ps: &PhaseSpace, cs: &ComplexStructure) -> Abcd {
    let n = ps.n();
    let dim = ps.dim();
    let mut frame = RMat::zeros(dim, dim);
    frame.view_mut((0, 0), (dim, n)).copy_from(ps.basis_n());
    frame.view_mut((0, n), (dim, n)).copy_from(ps.basis_m());
    let block = ps.frame_inv() * cs.matrix() * frame;
    let abcd = Abcd {
        a: block.view((0, 0), (n, n)).into_owned(),
        b: block.view((0, n), (n, n)).into_owned(),
        c: block.view((n, n), (n, n)).into_owned(),
        d: block.view((n, 0), (n, n)).into_owned(),
    };
    assert!(
        abcd.b.clone().try_inverse().is_some() && abcd.d.clone().try_inverse().is_some(),
        "B and D are invertible for every compatible complex structure"
    );
    abcd
}

/// `Omega(phi, phi') = [B^{-1} phi, phi'] - i [C B^{-1} phi, phi']`.
pub fn omega_from_abcd(ps: &PhaseSpace, b: &RMat, c: &RMat) -> Result<VacuumForm> {
    let b_inv_t = guarded_inverse(&b.transpose(), "B")?;
    let s = symmetrize(&(&b_inv_t * ps.pairing_mn()));
    let a = symmetrize(&(-(&b_inv_t * c.transpose() * ps.pairing_mn())));
    VacuumForm::new(s, a)
}

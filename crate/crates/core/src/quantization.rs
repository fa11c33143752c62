//! The data shared by both representations once a complex structure is fixed.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::correspondence::{j_from_omega, j_map, metric, omega_from_j, ComplexStructure, VacuumForm};
use crate::error::{Error, Result};
use crate::linalg::{sym_sqrt_pair, to_complex_mat, CMat, CVec, RMat, RVec, C64};
use crate::phase_space::PhaseSpace;

/// A phase space with a compatible complex structure and its vacuum form.
///
/// Holomorphic coordinates are `z_k(xi) = {u_k, xi} / sqrt 2` where
/// `u_k = j(phi_k)` for an `S`-orthonormal basis `phi_k` of `Q`. In these
/// coordinates `{tau, xi} = 2 conj(z(tau)) . z(xi)` and `nu_L` is the
/// standard complex Gaussian.
#[derive(Debug, Clone)]
pub struct Quantization {
    ps: PhaseSpace,
    cs: ComplexStructure,
    omega: VacuumForm,
    g: RMat,
    jmap: RMat,
    phi_basis: RMat,
    u: RMat,
    zmat: CMat,
    omega_c: CMat,
}

impl Quantization {
    pub fn from_complex_structure(ps: &PhaseSpace, cs: &ComplexStructure) -> Self {
        let omega = omega_from_j(ps, cs);
        Self::assemble(ps.clone(), cs.clone(), omega)
    }

    pub fn from_vacuum_form(ps: &PhaseSpace, omega: &VacuumForm) -> Result<Self> {
        if omega.n() != ps.n() {
            return Err(Error::InvalidInput("vacuum form size does not match phase space".into()));
        }
        let cs = j_from_omega(ps, omega)?;
        Ok(Self::assemble(ps.clone(), cs, omega.clone()))
    }

    fn assemble(ps: PhaseSpace, cs: ComplexStructure, omega: VacuumForm) -> Self {
        let g = metric(&ps, &cs);
        let jmap = j_map(&ps, &cs);
        let (_, s_inv_sqrt) = sym_sqrt_pair(omega.s());
        let u = &jmap * &s_inv_sqrt;
        let two_w = ps.w() * 2.0;
        let re = u.transpose() * &g * FRAC_1_SQRT_2;
        let im = u.transpose() * &two_w * FRAC_1_SQRT_2;
        let zmat = CMat::from_fn(ps.n(), ps.dim(), |r, c| C64::new(re[(r, c)], im[(r, c)]));
        let omega_c = omega.complex_matrix();
        Self {
            ps,
            cs,
            omega,
            g,
            jmap,
            phi_basis: s_inv_sqrt,
            u,
            zmat,
            omega_c,
        }
    }

    pub fn phase_space(&self) -> &PhaseSpace {
        &self.ps
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.cs
    }

    pub fn j(&self) -> &RMat {
        self.cs.matrix()
    }

    pub fn vacuum_form(&self) -> &VacuumForm {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.ps.n()
    }

    pub fn dim(&self) -> usize {
        self.ps.dim()
    }

    /// The metric `G = 2 W J`.
    pub fn metric(&self) -> &RMat {
        &self.g
    }

    /// The map `j: Q -> L`.
    pub fn j_map(&self) -> &RMat {
        &self.jmap
    }

    /// Columns form an `S`-orthonormal basis of `Q`.
    pub fn q_orthonormal_basis(&self) -> &RMat {
        &self.phi_basis
    }

    /// Columns `u_k = j(phi_k)`, a `g`-orthonormal basis of `J M`.
    pub fn u(&self) -> &RMat {
        &self.u
    }

    /// Rows are the complex covectors `z_k`.
    pub fn z_matrix(&self) -> &CMat {
        &self.zmat
    }

    /// `S + iA`.
    pub fn omega_matrix(&self) -> &CMat {
        &self.omega_c
    }

    pub fn g(&self, a: &RVec, b: &RVec) -> f64 {
        a.dot(&(&self.g * b))
    }

    /// `{tau, xi} = g(tau, xi) + 2i omega(tau, xi)`.
    pub fn braces(&self, tau: &RVec, xi: &RVec) -> C64 {
        C64::new(self.g(tau, xi), 2.0 * self.ps.omega(tau, xi))
    }

    /// Holomorphic coordinates of a real vector.
    pub fn z(&self, xi: &RVec) -> CVec {
        &self.zmat * xi.map(|x| C64::new(x, 0.0))
    }

    /// Complex-linear extension of [`z`](Self::z).
    pub fn z_c(&self, xi: &CVec) -> CVec {
        &self.zmat * xi
    }

    /// The real vector with holomorphic coordinates `z`.
    pub fn point_from_z(&self, z: &CVec) -> RVec {
        let x = z.map(|c| c.re) * std::f64::consts::SQRT_2;
        let y = z.map(|c| c.im) * std::f64::consts::SQRT_2;
        &self.u * x + self.j() * &self.u * y
    }

    /// `Omega(a, b)` for complex Q-vectors, bilinear.
    pub fn omega_c(&self, a: &CVec, b: &CVec) -> C64 {
        a.dot(&(&self.omega_c * b))
    }

    /// `J` as a complex matrix.
    pub fn j_complex(&self) -> CMat {
        to_complex_mat(self.j())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coupled_j, e1, j2, two_mode};

    #[test]
    fn braces_from_z() {
        let ps = two_mode();
        let q = Quantization::from_complex_structure(&ps, &coupled_j(&ps));
        let tau = RVec::from_vec(vec![0.4, -1.0, 0.2, 0.9]);
        let xi = RVec::from_vec(vec![1.3, 0.1, -0.6, 0.5]);
        let via_z: C64 = q.z(&tau).iter().zip(q.z(&xi).iter()).map(|(a, b)| a.conj() * b).sum();
        assert!((q.braces(&tau, &xi) - via_z * 2.0).norm() < 1e-12);
    }

    #[test]
    fn z_is_complex_linear() {
        let ps = e1();
        let q = Quantization::from_complex_structure(&ps, &j2(&ps));
        let xi = RVec::from_vec(vec![0.7, -0.2]);
        let jxi = q.j() * &xi;
        assert!((q.z(&jxi) - q.z(&xi) * C64::new(0.0, 1.0)).camax() < 1e-14);
        assert!((q.point_from_z(&q.z(&xi)) - xi).amax() < 1e-14);
    }
}

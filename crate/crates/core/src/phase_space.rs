//! Linear phase space `(L, [.,.], omega)` and its canonical splitting `L = M + N`.
//!
//! The bracket is stored as a matrix `T` with `[xi, tau] = xi^T T tau`. The
//! symplectic form is its antisymmetric part, `omega = xi^T W tau` with
//! `W = (T - T^T) / 2`. `M` is the right kernel of `T`, `N` the right kernel of
//! `T^T`, and `Q = L / M` is coordinatized through `N`: the Q-coordinates of
//! `xi` are the `N` components of `xi` in the basis `[basis_n | basis_m]`.

use crate::error::{Error, Result};
use crate::linalg::{
    canonical_basis, condition_number, guarded_inverse, null_space, CVec, RMat, RVec, C64,
    MAX_CONDITION,
};

/// Tolerance for the structural checks performed by the constructors.
const STRUCTURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpace {
    t: RMat,
    w: RMat,
    basis_m: RMat,
    basis_n: RMat,
    /// Inverse of `[basis_n | basis_m]`.
    frame_inv: RMat,
    /// `basis_m^T T basis_n`, the nondegenerate `M x N` pairing.
    pmn: RMat,
    pmn_inv: RMat,
    /// `(2W)^{-1}`, maps covectors to Hamiltonian vectors.
    two_w_inv: RMat,
    /// `T basis_n`, so that `[xi, phi] = xi^T tn phi` for `phi` in `Q`.
    tn: RMat,
}

impl PhaseSpace {
    /// Builds the phase space of the bracket matrix `t`.
    pub fn new(t: RMat) -> Result<Self> {
        if !t.is_square() || !t.nrows().is_multiple_of(2) || t.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "bracket matrix must be square of even dimension, got {}x{}",
                t.nrows(),
                t.ncols()
            )));
        }
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("bracket matrix has non-finite entries".into()));
        }
        let dim = t.nrows();
        let n = dim / 2;
        let w = (&t - t.transpose()) * 0.5;
        let cond = condition_number(&w);
        if !cond.is_finite() || cond > MAX_CONDITION {
            return Err(Error::Inadmissible(format!(
                "symplectic form is degenerate (condition number {cond:.3e})"
            )));
        }
        let basis_m = canonical_basis(&null_space(&t));
        let basis_n = canonical_basis(&null_space(&t.transpose()));
        if basis_m.ncols() != n || basis_n.ncols() != n {
            return Err(Error::Inadmissible(format!(
                "dim M = {}, dim N = {}, expected {n}",
                basis_m.ncols(),
                basis_n.ncols()
            )));
        }
        let mut frame = RMat::zeros(dim, dim);
        frame.view_mut((0, 0), (dim, n)).copy_from(&basis_n);
        frame.view_mut((0, n), (dim, n)).copy_from(&basis_m);
        let frame_inv = guarded_inverse(&frame, "M + N frame")
            .map_err(|_| Error::Inadmissible("M and N do not span L".into()))?;
        let pmn = basis_m.transpose() * &t * &basis_n;
        let pmn_inv = guarded_inverse(&pmn, "M x N pairing")
            .map_err(|_| Error::Inadmissible("bracket degenerate on M x N".into()))?;
        let two_w_inv = guarded_inverse(&(&w * 2.0), "symplectic form")?;
        let tn = &t * &basis_n;
        Ok(Self {
            t,
            w,
            basis_m,
            basis_n,
            frame_inv,
            pmn,
            pmn_inv,
            two_w_inv,
            tn,
        })
    }

    /// Builds the bracket `[m + n, m' + n'] = 2 omega(m, n')` of a real polarization.
    ///
    /// `basis_m` and `basis_n` must span complementary Lagrangian subspaces of `w`.
    pub fn from_splitting(w: &RMat, basis_m: &RMat, basis_n: &RMat) -> Result<Self> {
        let dim = w.nrows();
        if !w.is_square() || !dim.is_multiple_of(2) || dim == 0 {
            return Err(Error::InvalidInput("symplectic matrix must be square, even".into()));
        }
        let n = dim / 2;
        if basis_m.shape() != (dim, n) || basis_n.shape() != (dim, n) {
            return Err(Error::InvalidInput(format!(
                "subspace bases must be {dim}x{n}"
            )));
        }
        if (w + w.transpose()).amax() > STRUCTURE_TOL * w.amax().max(1.0) {
            return Err(Error::InvalidInput("symplectic matrix is not antisymmetric".into()));
        }
        let scale = w.amax().max(1.0) * basis_m.amax().max(basis_n.amax()).powi(2).max(1.0);
        if (basis_m.transpose() * w * basis_m).amax() > STRUCTURE_TOL * scale {
            return Err(Error::Inadmissible("M is not isotropic".into()));
        }
        if (basis_n.transpose() * w * basis_n).amax() > STRUCTURE_TOL * scale {
            return Err(Error::Inadmissible("N is not isotropic".into()));
        }
        let mut frame = RMat::zeros(dim, dim);
        frame.view_mut((0, 0), (dim, n)).copy_from(basis_n);
        frame.view_mut((0, n), (dim, n)).copy_from(basis_m);
        let frame_inv = guarded_inverse(&frame, "M + N frame")
            .map_err(|_| Error::Inadmissible("M and N are not complementary".into()))?;
        let proj_n = basis_n * frame_inv.rows(0, n);
        let proj_m = basis_m * frame_inv.rows(n, n);
        let t = proj_m.transpose() * w * proj_n * 2.0;
        let ps = Self::new(t)?;
        // the recomputed kernels must be the requested subspaces
        let scale_t = ps.t.amax().max(1.0);
        if (&ps.t * basis_m).amax() > STRUCTURE_TOL * scale_t
            || (ps.t.transpose() * basis_n).amax() > STRUCTURE_TOL * scale_t
        {
            return Err(Error::Inadmissible("splitting not reproduced by bracket".into()));
        }
        Ok(ps)
    }

    /// `dim L = 2n`.
    pub fn dim(&self) -> usize {
        self.t.nrows()
    }

    /// `n = dim Q`.
    pub fn n(&self) -> usize {
        self.t.nrows() / 2
    }

    pub fn t(&self) -> &RMat {
        &self.t
    }

    pub fn w(&self) -> &RMat {
        &self.w
    }

    pub fn basis_m(&self) -> &RMat {
        &self.basis_m
    }

    pub fn basis_n(&self) -> &RMat {
        &self.basis_n
    }

    /// `basis_m^T T basis_n`.
    pub fn pairing_mn(&self) -> &RMat {
        &self.pmn
    }

    pub fn pairing_mn_inv(&self) -> &RMat {
        &self.pmn_inv
    }

    /// Inverse of `[basis_n | basis_m]`: first `n` rows give Q-coordinates.
    pub fn frame_inv(&self) -> &RMat {
        &self.frame_inv
    }

    /// `T basis_n`.
    pub fn t_n(&self) -> &RMat {
        &self.tn
    }

    pub fn bracket(&self, xi: &RVec, tau: &RVec) -> f64 {
        xi.dot(&(&self.t * tau))
    }

    pub fn omega(&self, xi: &RVec, tau: &RVec) -> f64 {
        xi.dot(&(&self.w * tau))
    }

    /// Coordinates of the class of `xi` in `Q`.
    pub fn quotient(&self, xi: &RVec) -> RVec {
        self.frame_inv.rows(0, self.n()) * xi
    }

    /// Complex-linear extension of [`quotient`](Self::quotient).
    pub fn quotient_c(&self, xi: &CVec) -> CVec {
        self.quotient_matrix().map(|x| C64::new(x, 0.0)) * xi
    }

    /// The `n x 2n` matrix of the quotient map.
    pub fn quotient_matrix(&self) -> RMat {
        self.frame_inv.rows(0, self.n()).into_owned()
    }

    /// Coordinates of the `M` component of `xi` along `basis_m`.
    pub fn m_coords(&self, xi: &RVec) -> RVec {
        self.frame_inv.rows(self.n(), self.n()) * xi
    }

    /// The element of `N` representing `phi` in `Q`.
    pub fn include_n(&self, phi: &RVec) -> RVec {
        &self.basis_n * phi
    }

    /// `[xi, phi]` for `phi` in `Q`.
    pub fn bracket_q(&self, xi: &RVec, phi: &RVec) -> f64 {
        xi.dot(&(&self.tn * phi))
    }

    /// The covector `lambda` on `Q` with `lambda . phi = [xi, phi]`.
    pub fn bracket_covector(&self, xi: &RVec) -> RVec {
        self.tn.transpose() * xi
    }

    /// Complex-linear extension of [`bracket_covector`](Self::bracket_covector).
    pub fn bracket_covector_c(&self, xi: &CVec) -> CVec {
        self.tn.transpose().map(|x| C64::new(x, 0.0)) * xi
    }

    /// `(2W)^{-1}`.
    pub fn two_w_inv(&self) -> &RMat {
        &self.two_w_inv
    }

    /// The phase-space point with Q-coordinates `sigma` and bracket covector `lambda`.
    pub fn label_from_sigma_lambda(&self, sigma: &RVec, lambda: &RVec) -> RVec {
        &self.basis_n * sigma + &self.basis_m * (self.pmn_inv.transpose() * lambda)
    }
}

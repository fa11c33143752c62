//! Small dense linear-algebra helpers shared by the structural modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Relative threshold used for all rank decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Condition-number ceiling for linear solves that encode a structural inverse.
pub const MAX_CONDITION: f64 = 1e12;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn to_complex_mat(m: &RMat) -> CMat {
    m.map(|x| C64::new(x, 0.0))
}

pub fn to_complex_vec(v: &RVec) -> CVec {
    v.map(|x| C64::new(x, 0.0))
}

/// Spectral condition number from the singular values.
pub fn condition_number(m: &RMat) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse of a square matrix, refusing numerically singular input.
pub fn guarded_inverse(m: &RMat, what: &'static str) -> Result<RMat> {
    let cond = condition_number(m);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::IllConditioned { what, condition: cond });
    }
    m.clone()
        .try_inverse()
        .ok_or(Error::IllConditioned { what, condition: cond })
}

/// Orthonormal basis (as columns) of the right kernel `{x : m x = 0}`.
///
/// Singular values below `RANK_TOL * sigma_max` count as zero.
pub fn null_space(m: &RMat) -> RMat {
    let ncols = m.ncols();
    // pad to a square matrix so the full right-singular basis is available
    let rows = m.nrows().max(ncols);
    let mut sq = RMat::zeros(rows, ncols);
    sq.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let thresh = if smax == 0.0 { 0.0 } else { RANK_TOL * smax };
    let kernel: Vec<RVec> = (0..ncols)
        .filter(|&i| smax == 0.0 || sv[i] <= thresh)
        .map(|i| vt.row(i).transpose())
        .collect();
    if kernel.is_empty() {
        RMat::zeros(ncols, 0)
    } else {
        RMat::from_columns(&kernel)
    }
}

/// Bring the column space of `basis` to a canonical basis: reduced column
/// echelon form with partial pivoting, so the pivot rows form the identity.
///
/// Two bases of the same subspace map to the same output (up to roundoff),
/// which makes the Q coordinate frame independent of SVD sign choices.
pub fn canonical_basis(basis: &RMat) -> RMat {
    let mut b = basis.transpose(); // rows are basis vectors
    let (k, dim) = b.shape();
    let mut pivot_row = 0;
    for col in 0..dim {
        if pivot_row == k {
            break;
        }
        let (best, val) = (pivot_row..k)
            .map(|r| (r, b[(r, col)].abs()))
            .fold((pivot_row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= RANK_TOL {
            continue;
        }
        b.swap_rows(pivot_row, best);
        let p = b[(pivot_row, col)];
        for j in 0..dim {
            b[(pivot_row, j)] /= p;
        }
        for r in 0..k {
            if r != pivot_row {
                let f = b[(r, col)];
                if f != 0.0 {
                    for j in 0..dim {
                        let v = b[(pivot_row, j)];
                        b[(r, j)] -= f * v;
                    }
                }
            }
        }
        pivot_row += 1;
    }
    b.transpose()
}

/// Principal square root and inverse square root of a symmetric positive definite matrix.
pub fn sym_sqrt_pair(m: &RMat) -> (RMat, RMat) {
    let eig = m.clone().symmetric_eigen();
    let u = &eig.eigenvectors;
    let sqrt = u * RMat::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * u.transpose();
    let isqrt = u * RMat::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt())) * u.transpose();
    (sqrt, isqrt)
}

pub fn is_symmetric(m: &RMat, tol: f64) -> bool {
    m.is_square() && (m - m.transpose()).amax() <= tol * m.amax().max(1.0)
}

pub fn min_eigenvalue(sym: &RMat) -> f64 {
    sym.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn symmetrize(m: &RMat) -> RMat {
    (m + m.transpose()) * 0.5
}

/// Bilinear (not sesquilinear) dot product of complex vectors.
pub fn cdot(a: &CVec, b: &CVec) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn rdot_c(a: &RVec, b: &CVec) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| y * *x).sum()
}

pub fn max_abs_diff(a: &RMat, b: &RMat) -> f64 {
    (a - b).amax()
}

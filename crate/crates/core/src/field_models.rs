//! Free scalar field on a periodic one-dimensional lattice.
//!
//! Phase-space coordinates are ordered `(phi_0 .. phi_{N-1}, pi_0 .. pi_{N-1})`
//! with bracket `[xi, tau] = a sum_x xi_pi(x) tau_phi(x)`, so `M` is the
//! momentum block and `Q` the field configurations. With
//! `K = m^2 - Laplacian / a^2` the vacuum complex structure is
//! `J = [[0, K^{-1/2}], [-K^{1/2}, 0]]`.

use std::f64::consts::PI;

use crate::correspondence::{abcd_from_j, omega_from_abcd, ComplexStructure, VacuumForm};
use crate::error::{Error, Result};
use crate::linalg::RMat;
use crate::linalg::RVec;
use crate::observables::ObservableSpec;
use crate::phase_space::PhaseSpace;
use crate::quantization::Quantization;

#[derive(Debug, Clone)]
pub struct LatticeModel {
    sites: usize,
    mass: f64,
    spacing: f64,
    ps: PhaseSpace,
    cs: ComplexStructure,
}

/// `omega_k = sqrt(m^2 + (2 sin(pi k / N) / a)^2)`.
pub fn dispersion(sites: usize, mass: f64, spacing: f64, k: usize) -> f64 {
    let s = 2.0 / spacing * (PI * k as f64 / sites as f64).sin();
    (mass * mass + s * s).sqrt()
}

/// Orthonormal real Fourier basis as columns, with the wave number of each column.
///
/// Constant mode first, then cosine/sine pairs, then the alternating mode for even `N`.
pub fn real_fourier_basis(sites: usize) -> (RMat, Vec<usize>) {
    let n = sites as f64;
    let mut cols: Vec<(RVec, usize)> = vec![(RVec::from_element(sites, 1.0 / n.sqrt()), 0)];
    for k in 1..sites.div_ceil(2) {
        let arg = |x: usize| 2.0 * PI * (k * x) as f64 / n;
        let scale = (2.0 / n).sqrt();
        cols.push((RVec::from_fn(sites, |x, _| scale * arg(x).cos()), k));
        cols.push((RVec::from_fn(sites, |x, _| scale * arg(x).sin()), k));
    }
    if sites.is_multiple_of(2) && sites > 1 {
        let sign = |x: usize| if x.is_multiple_of(2) { 1.0 } else { -1.0 };
        cols.push((RVec::from_fn(sites, |x, _| sign(x) / n.sqrt()), sites / 2));
    }
    let basis = RMat::from_fn(sites, sites, |r, c| cols[c].0[r]);
    (basis, cols.into_iter().map(|(_, k)| k).collect())
}

/// `K^s` for the lattice Klein-Gordon operator, assembled mode by mode.
fn kg_power(sites: usize, mass: f64, spacing: f64, s: f64) -> RMat {
    let (basis, ks) = real_fourier_basis(sites);
    let diag = RVec::from_iterator(
        sites,
        ks.iter().map(|&k| dispersion(sites, mass, spacing, k).powf(2.0 * s)),
    );
    &basis * RMat::from_diagonal(&diag) * basis.transpose()
}

/// `m^2 - Laplacian / a^2` with periodic boundary conditions, in site space.
pub fn kg_operator(sites: usize, mass: f64, spacing: f64) -> RMat {
    let mut k = RMat::identity(sites, sites) * (mass * mass + 2.0 / (spacing * spacing));
    for x in 0..sites {
        k[(x, (x + 1) % sites)] -= 1.0 / (spacing * spacing);
        k[(x, (x + sites - 1) % sites)] -= 1.0 / (spacing * spacing);
    }
    k
}

/// Builds the lattice phase space and its vacuum complex structure.
pub fn build_lattice(sites: usize, mass: f64, spacing: f64) -> Result<LatticeModel> {
    if sites == 0 {
        return Err(Error::InvalidInput("lattice needs at least one site".into()));
    }
    if !(mass > 0.0 && mass.is_finite()) || !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "mass and spacing must be positive, got m = {mass}, a = {spacing}"
        )));
    }
    let dim = 2 * sites;
    let mut t = RMat::zeros(dim, dim);
    for x in 0..sites {
        t[(sites + x, x)] = spacing;
    }
    let ps = PhaseSpace::new(t)?;
    let mut j = RMat::zeros(dim, dim);
    j.view_mut((0, sites), (sites, sites))
        .copy_from(&kg_power(sites, mass, spacing, -0.5));
    j.view_mut((sites, 0), (sites, sites))
        .copy_from(&(-kg_power(sites, mass, spacing, 0.5)));
    let cs = ComplexStructure::new(&ps, j)?;
    Ok(LatticeModel {
        sites,
        mass,
        spacing,
        ps,
        cs,
    })
}

impl LatticeModel {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn phase_space(&self) -> &PhaseSpace {
        &self.ps
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.cs
    }

    pub fn quantization(&self) -> Quantization {
        Quantization::from_complex_structure(&self.ps, &self.cs)
    }

    /// Mode frequencies `omega_k`, `k = 0 .. N-1`.
    pub fn mode_frequencies(&self) -> Vec<f64> {
        (0..self.sites)
            .map(|k| dispersion(self.sites, self.mass, self.spacing, k))
            .collect()
    }
}

/// `Omega = B^{-1} - i C B^{-1}` from the block decomposition of `J`.
pub fn vacuum_form(model: &LatticeModel) -> Result<VacuumForm> {
    let abcd = abcd_from_j(&model.ps, &model.cs);
    omega_from_abcd(&model.ps, &abcd.b, &abcd.c)
}

/// `phi[f] = a sum_x f(x) phi(x)` and `pi[g] = a sum_x g(x) pi(x)`.
pub fn field_observables(
    model: &LatticeModel,
    f: &RVec,
    g: &RVec,
) -> Result<(ObservableSpec, ObservableSpec)> {
    let n = model.sites;
    if f.len() != n || g.len() != n {
        return Err(Error::InvalidInput(format!("smearing functions must have length {n}")));
    }
    let a = model.spacing;
    let mut cf = RVec::zeros(2 * n);
    cf.rows_mut(0, n).copy_from(&(f * a));
    let mut cg = RVec::zeros(2 * n);
    cg.rows_mut(n, n).copy_from(&(g * a));
    Ok((
        ObservableSpec::linear(&model.ps, cf)?,
        ObservableSpec::linear(&model.ps, cg)?,
    ))
}

/// The lattice delta function at `x`, normalized so that `phi[delta_x] = phi(x)`.
pub fn lattice_delta(model: &LatticeModel, x: usize) -> RVec {
    let mut d = RVec::zeros(model.sites);
    d[x] = 1.0 / model.spacing;
    d
}

/// Vacuum two-point function `<phi(x) phi(y)> = (S^{-1})_{xy} / 2`.
pub fn two_point(omega: &VacuumForm) -> Result<RMat> {
    let s_inv = crate::linalg::guarded_inverse(omega.s(), "Re Omega")?;
    Ok(s_inv * 0.5)
}

/// `(site, <phi(0) phi(site)>)` rows, the vacuum correlation profile.
pub fn vacuum_profile(model: &LatticeModel) -> Result<Vec<(usize, f64)>> {
    let g = two_point(&vacuum_form(model)?)?;
    Ok((0..model.sites).map(|x| (x, g[(0, x)])).collect())
}

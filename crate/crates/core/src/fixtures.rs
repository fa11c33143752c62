//! Small named phase spaces and complex structures used across tests, docs and the CLI.

use crate::correspondence::{j_from_omega, ComplexStructure, VacuumForm};
use crate::linalg::RMat;
use crate::phase_space::PhaseSpace;

/// One degree of freedom, ordering `(q, p)`, bracket `[xi, tau] = xi_p tau_q`.
pub fn e1() -> PhaseSpace {
    PhaseSpace::new(RMat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0])).expect("valid bracket")
}

/// Two degrees of freedom, ordering `(q1, q2, p1, p2)`, bracket `xi_p . tau_q`.
pub fn two_mode() -> PhaseSpace {
    let mut t = RMat::zeros(4, 4);
    t[(2, 0)] = 1.0;
    t[(3, 1)] = 1.0;
    PhaseSpace::new(t).expect("valid bracket")
}

/// `[[0, 1], [-1, 0]]` on [`e1`], the unit-frequency oscillator.
pub fn j0(ps: &PhaseSpace) -> ComplexStructure {
    ComplexStructure::new(ps, RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]))
        .expect("compatible")
}

/// `[[-1, 1], [-2, 1]]` on [`e1`], a structure with `J M != N`.
pub fn j2(ps: &PhaseSpace) -> ComplexStructure {
    ComplexStructure::new(ps, RMat::from_row_slice(2, 2, &[-1.0, 1.0, -2.0, 1.0]))
        .expect("compatible")
}

/// `[[0, 1/m], [-m, 0]]` on [`e1`], the oscillator of frequency `m`.
pub fn jm(ps: &PhaseSpace, m: f64) -> ComplexStructure {
    ComplexStructure::new(ps, RMat::from_row_slice(2, 2, &[0.0, 1.0 / m, -m, 0.0]))
        .expect("compatible")
}

/// A vacuum form on [`two_mode`] with off-diagonal real and imaginary parts.
pub fn coupled_omega() -> VacuumForm {
    VacuumForm::new(
        RMat::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]),
        RMat::from_row_slice(2, 2, &[0.3, 0.1, 0.1, -0.2]),
    )
    .expect("valid vacuum form")
}

/// The complex structure of [`coupled_omega`].
pub fn coupled_j(ps: &PhaseSpace) -> ComplexStructure {
    j_from_omega(ps, &coupled_omega()).expect("well conditioned")
}

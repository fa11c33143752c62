//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use geoquant::affine::{
    affine_coherent_h, affine_coherent_s, apply_affine_observable, conjugate_state,
    inner_product_affine, transform_affine, AffineSpace, AffineSpan,
};
use geoquant::bargmann::{
    coordinate_kernel, kernel, pairing, q_coordinates, transform, transform_quadrature,
};
use geoquant::correspondence::{j_from_omega, omega_from_j, StructureDefects};
use geoquant::field_models::{build_lattice, dispersion, two_point, vacuum_form};
use geoquant::fixtures::{e1, j0};
use geoquant::gaussian::default_order;
use geoquant::holomorphic::{
    coherent_h, evaluate_h, inner_product_h, inner_product_h_quadrature, to_standard, HoloKind,
};
use geoquant::linalg::{RVec, C64, I};
use geoquant::observables::{
    commutator_defect, exp_creation_on_vacuum, intertwine_defect, ObservableSpec,
};
use geoquant::phase_space::PhaseSpace;
use geoquant::poly::Poly;
use geoquant::quantization::Quantization;
use geoquant::random::{
    random_coherent_span, random_complex_structure, random_label, random_phase_space,
    random_span, random_vacuum_form, rng, normal_vec,
};
use geoquant::schrodinger::{density_probe, evaluate, inner_product_quadrature};
use geoquant::span::{inner_product, norm, CoherentSpan, Representation, Term};

const SEED: u64 = 20_240_601;

const ROUNDTRIP_TOL: f64 = 1e-9;
const STRUCTURE_TOL: f64 = 1e-10;
const ISOMETRY_TOL: f64 = 1e-12;
const QUADRATURE_TOL: f64 = 1e-6;
const COORDINATE_TOL: f64 = 1e-12;
const REPRODUCE_TOL: f64 = 1e-10;
const CCR_TOL: f64 = 1e-10;
const INTERTWINE_TOL: f64 = 1e-9;
const FIDELITY_TOL: f64 = 1e-8;
const AFFINE_ISOMETRY_TOL: f64 = 1e-12;
const AFFINE_INTERTWINE_TOL: f64 = 1e-9;
const LINEAR_REDUCTION_TOL: f64 = 1e-12;
const LATTICE_TOL: f64 = 1e-10;
/// Slack for roundoff when residuals plateau.
const MONOTONE_TOL: f64 = 1e-12;

struct Outcome {
    id: usize,
    name: &'static str,
    max_error: f64,
    tolerance: f64,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.max_error.is_finite() && self.max_error <= self.tolerance && self.elapsed <= self.budget
    }
}

fn timed<F>(id: usize, name: &'static str, tolerance: f64, budget_s: u64, f: F) -> Outcome
where
    F: FnOnce() -> f64,
{
    let start = Instant::now();
    let max_error = f();
    Outcome {
        id,
        name,
        max_error,
        tolerance,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_s),
    }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn instance(seed: u64, n: usize) -> Quantization {
    let mut r = rng(seed);
    let ps = random_phase_space(&mut r, n).unwrap();
    let cs = random_complex_structure(&mut r, &ps, 0.4).unwrap();
    Quantization::from_complex_structure(&ps, &cs)
}

fn random_observable(seed: u64, ps: &PhaseSpace) -> ObservableSpec {
    let mut r = rng(seed);
    ObservableSpec::linear(ps, normal_vec(&mut r, ps.dim(), 1.0 / (ps.dim() as f64).sqrt()))
        .unwrap()
}

fn roundtrip() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let n = 1 + (trial as usize % 8);
        let mut r = rng(SEED + trial);
        let ps = random_phase_space(&mut r, n).unwrap();
        let cs = random_complex_structure(&mut r, &ps, 0.4).unwrap();
        let back = j_from_omega(&ps, &omega_from_j(&ps, &cs)).unwrap();
        worst = worst.max((back.matrix() - cs.matrix()).amax());
        let om = random_vacuum_form(&mut r, n).unwrap();
        let back = omega_from_j(&ps, &j_from_omega(&ps, &om).unwrap());
        worst = worst.max(back.max_abs_diff(&om));
    }
    worst
}

fn structure_invariants() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let n = 1 + (trial as usize % 8);
        let mut r = rng(SEED + 1000 + trial);
        let ps = random_phase_space(&mut r, n).unwrap();
        let om = random_vacuum_form(&mut r, n).unwrap();
        let cs = j_from_omega(&ps, &om).unwrap();
        let d = StructureDefects::of(&ps, cs.matrix());
        if d.metric_min_eigenvalue <= 0.0 {
            return f64::INFINITY;
        }
        worst = worst.max(d.square).max(d.symplectic).max(d.metric_asymmetry);
    }
    worst
}

fn isometry() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..50u64 {
        let n = 1 + (trial as usize % 4);
        let q = instance(SEED + 2000 + trial, n);
        let mut r = rng(SEED + 2100 + trial);
        let rep = if trial % 2 == 0 {
            Representation::SchrodingerFull
        } else {
            Representation::SchrodingerReduced
        };
        let terms = 1 + (trial as usize % 6);
        let a = random_coherent_span(&mut r, rep, n, terms, 1.0);
        let b = random_coherent_span(&mut r, rep, n, terms, 1.0);
        let lhs = inner_product(&q, &a, &b).unwrap();
        let rhs = inner_product(&q, &transform(&q, &a).unwrap(), &transform(&q, &b).unwrap()).unwrap();
        let scale = norm(&q, &a).unwrap() * norm(&q, &b).unwrap();
        worst = worst.max((lhs - rhs).norm() / scale.max(1.0));
    }
    worst
}

fn quadrature_agreement() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..6u64 {
        let n = 1 + (trial as usize % 2);
        let order = default_order(n);
        let q = instance(SEED + 3000 + trial, n);
        let mut r = rng(SEED + 3100 + trial);
        let ta = random_label(&mut r, 2 * n, 0.7);
        let tb = random_label(&mut r, 2 * n, 0.7);
        let sa = CoherentSpan::coherent(Representation::SchrodingerFull, &ta);
        let sb = CoherentSpan::coherent(Representation::SchrodingerFull, &tb);
        let closed = inner_product(&q, &sa, &sb).unwrap();
        worst = worst.max(rel(closed, inner_product_quadrature(&q, &sa, &sb, order).unwrap()));
        let ha = transform(&q, &sa).unwrap();
        let hb = transform(&q, &sb).unwrap();
        worst = worst.max(rel(closed, inner_product_h_quadrature(&q, &ha, &hb, order).unwrap()));
        let xi = random_label(&mut r, 2 * n, 0.7);
        let quad = transform_quadrature(&q, |phi| evaluate(&q, &sb, phi).unwrap(), &xi, order).unwrap();
        worst = worst.max(rel(evaluate_h(&q, &hb, &xi).unwrap(), quad));
        let paired = pairing(
            &q,
            |xi| evaluate_h(&q, &ha, xi).unwrap(),
            |phi| evaluate(&q, &sb, phi).unwrap(),
            order,
        )
        .unwrap();
        worst = worst.max(rel(inner_product(&q, &ha, &hb).unwrap(), paired));
    }
    worst
}

fn coordinate_form() -> f64 {
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let mut r = rng(SEED + 4000);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let xi = random_label(&mut r, 2, 2.0);
        let phi = random_label(&mut r, 1, 1.5);
        let direct = kernel(&q, &xi, &phi);
        let coords = coordinate_kernel(&q, &q.z(&xi), &q_coordinates(&q, &phi)).unwrap();
        worst = worst.max(rel(direct, coords));
    }
    worst
}

fn reproducing() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..50u64 {
        let n = 1 + (trial as usize % 3);
        let q = instance(SEED + 5000 + trial, n);
        let mut r = rng(SEED + 5100 + trial);
        let rep = if trial % 2 == 0 {
            Representation::HolomorphicStandard
        } else {
            Representation::HolomorphicNormalized
        };
        let psi = random_span(&mut r, rep, n, 3, 2, 1.0);
        let tau = random_label(&mut r, 2 * n, 1.0);
        let k = CoherentSpan::coherent(Representation::HolomorphicStandard, &tau);
        let inner = inner_product_h(&q, &k, &to_standard(&q, &psi)).unwrap();
        worst = worst.max(rel(inner, evaluate_h(&q, &psi, &tau).unwrap()));
        let kn = CoherentSpan::coherent(Representation::HolomorphicNormalized, &tau);
        worst = worst.max((norm(&q, &kn).unwrap() - 1.0).abs());
        let ks = CoherentSpan::coherent(Representation::SchrodingerReduced, &tau);
        worst = worst.max((norm(&q, &ks).unwrap() - 1.0).abs());
    }
    worst
}

fn ccr() -> f64 {
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let pos = ObservableSpec::linear(&ps, RVec::from_row_slice(&[1.0, 0.0])).unwrap();
    let mom = ObservableSpec::linear(&ps, RVec::from_row_slice(&[0.0, 1.0])).unwrap();
    let mut worst: f64 = 0.0;
    for rep in [Representation::SchrodingerFull, Representation::HolomorphicStandard] {
        let psi = CoherentSpan::coherent(rep, &RVec::from_row_slice(&[0.3, -0.8]));
        let c = commutator_defect(&q, &pos, &mom, &psi).unwrap();
        worst = worst.max((c.constant - I).norm()).max(c.max_error());
    }
    let reps = [
        Representation::SchrodingerFull,
        Representation::SchrodingerReduced,
        Representation::HolomorphicStandard,
        Representation::HolomorphicNormalized,
    ];
    for trial in 0..40u64 {
        let n = 1 + (trial as usize % 3);
        let q = instance(SEED + 6000 + trial, n);
        let f = random_observable(SEED + 6100 + trial, q.phase_space());
        let g = random_observable(SEED + 6200 + trial, q.phase_space());
        let mut r = rng(SEED + 6300 + trial);
        let psi = random_span(&mut r, reps[trial as usize % 4], n, 2, 2, 1.0);
        worst = worst.max(commutator_defect(&q, &f, &g, &psi).unwrap().max_error());
    }
    worst
}

fn intertwining() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..50u64 {
        let n = 1 + (trial as usize % 3);
        let q = instance(SEED + 7000 + trial, n);
        let f = random_observable(SEED + 7100 + trial, q.phase_space());
        let mut r = rng(SEED + 7200 + trial);
        let rep = if trial % 2 == 0 {
            Representation::SchrodingerFull
        } else {
            Representation::SchrodingerReduced
        };
        let psi = random_span(&mut r, rep, n, 2, 2, 1.0);
        worst = worst.max(intertwine_defect(&q, &f, &psi).unwrap());
    }
    worst
}

fn exp_creation() -> f64 {
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let mut worst: f64 = 0.0;
    for f in [[1.0, 0.0], [0.0, 1.0]] {
        let obs = ObservableSpec::linear(&ps, RVec::from_row_slice(&f)).unwrap();
        worst = worst.max(1.0 - exp_creation_on_vacuum(&q, &obs).unwrap().fidelity);
    }
    for trial in 0..10u64 {
        let n = 1 + (trial as usize % 2);
        let q = instance(SEED + 8000 + trial, n);
        let f = random_observable(SEED + 8100 + trial, q.phase_space());
        let r = exp_creation_on_vacuum(&q, &f).unwrap();
        worst = worst.max(1.0 - r.fidelity);
    }
    worst
}

fn random_affine(seed: u64, n: usize) -> (AffineSpace, Quantization) {
    let mut r = rng(seed);
    let ps = random_phase_space(&mut r, n).unwrap();
    let cs = random_complex_structure(&mut r, &ps, 0.4).unwrap();
    let q = Quantization::from_complex_structure(&ps, &cs);
    // T^T v vanishes on M = ker T
    let theta0 = ps.t().transpose() * normal_vec(&mut r, ps.dim(), 0.5);
    (AffineSpace::new(ps, theta0).unwrap(), q)
}

fn random_affine_span(
    aff: &AffineSpace,
    q: &Quantization,
    seed: u64,
    rep: Representation,
) -> AffineSpan {
    let dim = aff.phase_space().dim();
    let mut r = rng(seed);
    let frame = random_label(&mut r, dim, 1.0);
    let mut psi = AffineSpan::coherent(aff, rep, &frame, &random_label(&mut r, dim, 1.0)).unwrap();
    for _ in 0..2 {
        let zeta = &frame + random_label(&mut r, dim, 1.0);
        let k = AffineSpan::coherent(aff, rep, &random_label(&mut r, dim, 1.0), &zeta).unwrap();
        let c = geoquant::random::random_complex(&mut r);
        psi = psi.add(&k.scale(c), aff, q).unwrap();
    }
    psi
}

fn affine_suite() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..20u64 {
        let n = 1 + (trial as usize % 2);
        let (aff, q) = random_affine(SEED + 9000 + trial, n);
        let dim = aff.phase_space().dim();
        let a = random_affine_span(&aff, &q, SEED + 9100 + trial, Representation::SchrodingerReduced);
        let b = random_affine_span(&aff, &q, SEED + 9200 + trial, Representation::SchrodingerReduced);
        let scale = norm(&q, a.span()).unwrap() * norm(&q, b.span()).unwrap();
        let before = inner_product_affine(&aff, &q, &a, &b).unwrap();
        // base change
        let mut r = rng(SEED + 9300 + trial);
        let eta2 = random_label(&mut r, dim, 1.0);
        let a2 = conjugate_state(&aff, &q, &a, &eta2).unwrap();
        let b2 = conjugate_state(&aff, &q, &b, &eta2).unwrap();
        let after = inner_product(&q, a2.span(), b2.span()).unwrap();
        worst = worst.max((before - after).norm() / scale.max(1.0));
        // affine transform
        let ha = transform_affine(&q, &a).unwrap();
        let hb = transform_affine(&q, &b).unwrap();
        let mapped = inner_product_affine(&aff, &q, &ha, &hb).unwrap();
        worst = worst.max((before - mapped).norm() / scale.max(1.0));
    }
    worst
}

fn affine_intertwining() -> f64 {
    let mut worst: f64 = 0.0;
    for trial in 0..20u64 {
        let n = 1 + (trial as usize % 2);
        let (aff, q) = random_affine(SEED + 9000 + trial, n);
        let a = random_affine_span(&aff, &q, SEED + 9100 + trial, Representation::SchrodingerReduced);
        let f = random_observable(SEED + 9400 + trial, aff.phase_space());
        let f = ObservableSpec::affine(aff.phase_space(), f.f().clone(), 0.3).unwrap();
        let lhs = transform_affine(&q, &apply_affine_observable(&q, &f, &a).unwrap()).unwrap();
        let rhs = apply_affine_observable(&q, &f, &transform_affine(&q, &a).unwrap()).unwrap();
        let diff = lhs.span().sub(rhs.span()).unwrap().simplify();
        worst = worst.max(norm(&q, &diff).unwrap() / norm(&q, a.span()).unwrap());
    }
    worst
}

fn linear_reduction() -> f64 {
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let aff = AffineSpace::linear(ps.clone());
    let mut r = rng(SEED + 9500);
    let zero = RVec::zeros(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let phi = random_label(&mut r, 1, 1.5);
        let vac = geoquant::schrodinger::vacuum_wavefunction(q.vacuum_form(), &phi);
        worst = worst.max(rel(affine_coherent_s(&aff, &q, &zero, &phi), vac));
        let zeta = random_label(&mut r, 2, 1.5);
        let xi = random_label(&mut r, 2, 1.5);
        let linear = (-I * 0.5 * ps.bracket(&zeta, &zeta)).exp()
            * coherent_h(&q, &zeta, HoloKind::Normalized, &xi)
            * geoquant::holomorphic::alpha_fn(&q, &xi);
        worst = worst.max(rel(affine_coherent_h(&aff, &q, &zeta, &xi), linear));
    }
    worst
}

fn lattice() -> f64 {
    let mut r = rng(SEED + 10_000);
    let mut worst: f64 = 0.0;
    for sites in 1..=8 {
        let mass = 0.3 + 1.5 * geoquant::random::normal(&mut r).abs();
        let spacing = 0.3 + geoquant::random::normal(&mut r).abs();
        let model = build_lattice(sites, mass, spacing).unwrap();
        let via_abcd = vacuum_form(&model).unwrap();
        let direct = omega_from_j(model.phase_space(), model.complex_structure());
        worst = worst.max(via_abcd.max_abs_diff(&direct));
        let g = two_point(&via_abcd).unwrap();
        for x in 0..sites {
            let mode_sum: f64 = (0..sites)
                .map(|k| {
                    let u = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * x) as f64 / sites as f64)
                        / (sites as f64 * spacing).sqrt();
                    u.norm_sqr() / dispersion(sites, mass, spacing, k)
                })
                .sum();
            worst = worst.max((g[(x, x)] - 0.5 * mode_sum).abs());
        }
    }
    worst
}

fn density() -> f64 {
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let mut target = CoherentSpan::empty(Representation::SchrodingerReduced, 1);
    target
        .push(Term {
            coeff: C64::new(1.0, 0.0),
            label: RVec::zeros(2),
            poly: Poly::var(1, 0),
        })
        .unwrap();
    let probe = density_probe(&q, &target, 8).unwrap();
    probe
        .residuals
        .windows(2)
        .map(|w| (w[1] - w[0]).max(0.0))
        .fold(0.0, f64::max)
}

fn main() -> ExitCode {
    let outcomes = vec![
        timed(1, "complex structure <-> vacuum form round trip", ROUNDTRIP_TOL, 5, roundtrip),
        timed(2, "complex structure invariants", STRUCTURE_TOL, 2, structure_invariants),
        timed(3, "Bargmann transform isometry", ISOMETRY_TOL, 30, isometry),
        timed(3, "Bargmann transform quadrature oracles", QUADRATURE_TOL, 30, quadrature_agreement),
        timed(4, "coordinate form of the kernel", COORDINATE_TOL, 1, coordinate_form),
        timed(5, "reproducing property and unit norms", REPRODUCE_TOL, 2, reproducing),
        timed(6, "canonical commutation relations", CCR_TOL, 5, ccr),
        timed(7, "intertwining of observables", INTERTWINE_TOL, 10, intertwining),
        timed(8, "exponentiated creation operators", FIDELITY_TOL, 5, exp_creation),
        timed(9, "affine base change and transform isometry", AFFINE_ISOMETRY_TOL, 15, affine_suite),
        timed(9, "affine observable intertwining", AFFINE_INTERTWINE_TOL, 15, affine_intertwining),
        timed(9, "affine linear reduction", LINEAR_REDUCTION_TOL, 15, linear_reduction),
        timed(10, "lattice vacuum", LATTICE_TOL, 5, lattice),
        timed(11, "density probe monotonicity", MONOTONE_TOL, 5, density),
    ];
    let mut all = true;
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        all &= o.passed();
        println!(
            "criterion {:>2} {status} {:<46} max_error={:.3e} tolerance={:.0e} time={:.3}s",
            o.id,
            o.name,
            o.max_error,
            o.tolerance,
            o.elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

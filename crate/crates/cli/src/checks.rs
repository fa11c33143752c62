//! The check suites behind each subcommand.

use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use geoquant::affine::{
    apply_affine_observable, conjugate_state, inner_product_affine, transform_affine,
    AffineSpace, AffineSpan,
};
use geoquant::bargmann::{coordinate_kernel, kernel, pairing, q_coordinates, transform};
use geoquant::correspondence::{j_from_omega, omega_from_j, StructureDefects};
use geoquant::error::Result;
use geoquant::field_models::{build_lattice, dispersion, two_point, vacuum_form, vacuum_profile};
use geoquant::fixtures::{e1, j0};
use geoquant::gaussian::default_order;
use geoquant::holomorphic::evaluate_h;
use geoquant::linalg::C64;
use geoquant::observables::{commutator_defect, intertwine_defect, ObservableSpec};
use geoquant::poly::Poly;
use geoquant::quantization::Quantization;
use geoquant::random::{
    normal_vec, random_complex, random_complex_structure, random_label, random_phase_space,
    random_span, random_vacuum_form, rng,
};
use geoquant::schrodinger::{density_probe, evaluate};
use geoquant::span::{inner_product, norm, CoherentSpan, Representation, Term};

use crate::config::Settings;
use crate::report::CheckReport;

pub const ROUNDTRIP_TOL: f64 = 1e-9;
pub const ISOMETRY_TOL: f64 = 1e-12;
pub const KERNEL_TOL: f64 = 1e-12;
pub const QUADRATURE_TOL: f64 = 1e-6;
pub const CCR_TOL: f64 = 1e-10;
pub const INTERTWINE_TOL: f64 = 1e-9;
pub const LATTICE_TOL: f64 = 1e-10;
pub const MONOTONE_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-10;

/// Largest `n` for which `bargmann` runs the quadrature pairing.
const MAX_QUADRATURE_N: usize = 2;

const REPS: [Representation; 4] = [
    Representation::SchrodingerFull,
    Representation::SchrodingerReduced,
    Representation::HolomorphicStandard,
    Representation::HolomorphicNormalized,
];

fn trial_seed(s: &Settings, trial: usize) -> u64 {
    s.seed.wrapping_add(trial as u64)
}

fn instance(seed: u64, n: usize) -> Result<Quantization> {
    let mut r = rng(seed);
    let ps = random_phase_space(&mut r, n)?;
    let cs = random_complex_structure(&mut r, &ps, 0.4)?;
    Ok(Quantization::from_complex_structure(&ps, &cs))
}

fn observable(seed: u64, q: &Quantization) -> Result<ObservableSpec> {
    let dim = q.dim();
    ObservableSpec::linear(
        q.phase_space(),
        normal_vec(&mut rng(seed), dim, 1.0 / (dim as f64).sqrt()),
    )
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

pub fn roundtrip(s: &Settings) -> Result<Vec<CheckReport>> {
    (0..s.trials)
        .map(|t| {
            let started = Instant::now();
            let mut r = rng(trial_seed(s, t));
            let ps = random_phase_space(&mut r, s.n)?;
            let cs = random_complex_structure(&mut r, &ps, 0.4)?;
            let back = j_from_omega(&ps, &omega_from_j(&ps, &cs))?;
            let mut err = (back.matrix() - cs.matrix()).amax();
            let om = random_vacuum_form(&mut r, s.n)?;
            let cs2 = j_from_omega(&ps, &om)?;
            err = err.max(omega_from_j(&ps, &cs2).max_abs_diff(&om));
            let d = StructureDefects::of(&ps, cs2.matrix());
            if d.metric_min_eigenvalue <= 0.0 {
                err = f64::INFINITY;
            }
            err = err.max(d.square).max(d.symplectic);
            Ok(CheckReport::new("roundtrip", err, ROUNDTRIP_TOL, started))
        })
        .collect()
}

pub fn bargmann(s: &Settings) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let e1 = e1();
    let q0 = Quantization::from_complex_structure(&e1, &j0(&e1));
    for t in 0..s.trials {
        let seed = trial_seed(s, t);
        let q = instance(seed, s.n)?;
        let mut r = rng(seed ^ 0xB4);

        let started = Instant::now();
        let rep = [Representation::SchrodingerFull, Representation::SchrodingerReduced][t % 2];
        let a = random_span(&mut r, rep, s.n, 4, 0, 1.0);
        let b = random_span(&mut r, rep, s.n, 4, 0, 1.0);
        let before = inner_product(&q, &a, &b)?;
        let after = inner_product(&q, &transform(&q, &a)?, &transform(&q, &b)?)?;
        let scale = (norm(&q, &a)? * norm(&q, &b)?).max(1.0);
        out.push(CheckReport::new(
            "bargmann.isometry",
            (before - after).norm() / scale,
            ISOMETRY_TOL,
            started,
        ));

        let started = Instant::now();
        let xi = random_label(&mut r, 2, 2.0);
        let phi = random_label(&mut r, 1, 1.5);
        let coords = coordinate_kernel(&q0, &q0.z(&xi), &q_coordinates(&q0, &phi))?;
        out.push(CheckReport::new(
            "bargmann.kernel",
            rel(kernel(&q0, &xi, &phi), coords),
            KERNEL_TOL,
            started,
        ));

        if s.n <= MAX_QUADRATURE_N {
            let started = Instant::now();
            let sh = CoherentSpan::coherent(Representation::HolomorphicStandard, &random_label(&mut r, 2 * s.n, 0.7));
            let ss = CoherentSpan::coherent(Representation::SchrodingerFull, &random_label(&mut r, 2 * s.n, 0.7));
            let closed = inner_product(&q, &sh, &transform(&q, &ss)?)?;
            let quad = pairing(
                &q,
                |x| evaluate_h(&q, &sh, x).unwrap_or(C64::new(f64::NAN, 0.0)),
                |p| evaluate(&q, &ss, p).unwrap_or(C64::new(f64::NAN, 0.0)),
                default_order(s.n),
            )?;
            out.push(CheckReport::new("bargmann.pairing", rel(closed, quad), QUADRATURE_TOL, started));
        }
    }
    Ok(out)
}

pub fn ccr(s: &Settings) -> Result<Vec<CheckReport>> {
    (0..s.trials)
        .map(|t| {
            let started = Instant::now();
            let seed = trial_seed(s, t);
            let q = instance(seed, s.n)?;
            let f = observable(seed ^ 0xF, &q)?;
            let g = observable(seed ^ 0x6, &q)?;
            let mut r = rng(seed ^ 0xCC);
            let mut err: f64 = 0.0;
            for rep in REPS {
                let psi = random_span(&mut r, rep, s.n, 2, 2, 1.0);
                err = err.max(commutator_defect(&q, &f, &g, &psi)?.max_error());
            }
            Ok(CheckReport::new("ccr", err, CCR_TOL, started))
        })
        .collect()
}

pub fn intertwine(s: &Settings) -> Result<Vec<CheckReport>> {
    (0..s.trials)
        .map(|t| {
            let started = Instant::now();
            let seed = trial_seed(s, t);
            let q = instance(seed, s.n)?;
            let f = observable(seed ^ 0xF, &q)?;
            let rep = [Representation::SchrodingerFull, Representation::SchrodingerReduced][t % 2];
            let psi = random_span(&mut rng(seed ^ 0x17), rep, s.n, 2, 2, 1.0);
            Ok(CheckReport::new("intertwine", intertwine_defect(&q, &f, &psi)?, INTERTWINE_TOL, started))
        })
        .collect()
}

fn affine_state(aff: &AffineSpace, q: &Quantization, seed: u64) -> Result<AffineSpan> {
    let dim = aff.phase_space().dim();
    let mut r = rng(seed);
    let frame = random_label(&mut r, dim, 1.0);
    let zeta = random_label(&mut r, dim, 1.0);
    let mut psi = AffineSpan::coherent(aff, Representation::SchrodingerReduced, &frame, &zeta)?;
    for _ in 0..2 {
        let eta = random_label(&mut r, dim, 1.0);
        let zeta = random_label(&mut r, dim, 1.0);
        let k = AffineSpan::coherent(aff, Representation::SchrodingerReduced, &eta, &zeta)?;
        psi = psi.add(&k.scale(random_complex(&mut r)), aff, q)?;
    }
    Ok(psi)
}

pub fn affine(s: &Settings) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for t in 0..s.trials {
        let seed = trial_seed(s, t);
        let mut r = rng(seed);
        let ps = random_phase_space(&mut r, s.n)?;
        let cs = random_complex_structure(&mut r, &ps, 0.4)?;
        let q = Quantization::from_complex_structure(&ps, &cs);
        // T^T v vanishes on M = ker T
        let theta0 = ps.t().transpose() * normal_vec(&mut r, ps.dim(), 0.5);
        let aff = AffineSpace::new(ps, theta0)?;
        let a = affine_state(&aff, &q, seed ^ 0xA)?;
        let b = affine_state(&aff, &q, seed ^ 0xB)?;
        let scale = (norm(&q, a.span())? * norm(&q, b.span())?).max(1.0);
        let before = inner_product_affine(&aff, &q, &a, &b)?;

        let started = Instant::now();
        let eta2 = random_label(&mut r, aff.phase_space().dim(), 1.0);
        let a2 = conjugate_state(&aff, &q, &a, &eta2)?;
        let b2 = conjugate_state(&aff, &q, &b, &eta2)?;
        let after = inner_product(&q, a2.span(), b2.span())?;
        out.push(CheckReport::new("affine.base_change", (before - after).norm() / scale, ISOMETRY_TOL, started));

        let started = Instant::now();
        let ha = transform_affine(&q, &a)?;
        let hb = transform_affine(&q, &b)?;
        let mapped = inner_product_affine(&aff, &q, &ha, &hb)?;
        out.push(CheckReport::new("affine.transform", (before - mapped).norm() / scale, ISOMETRY_TOL, started));

        let started = Instant::now();
        let f = ObservableSpec::affine(
            aff.phase_space(),
            normal_vec(&mut r, aff.phase_space().dim(), 0.5),
            random_complex(&mut r).re,
        )?;
        let lhs = transform_affine(&q, &apply_affine_observable(&q, &f, &a)?)?;
        let rhs = apply_affine_observable(&q, &f, &ha)?;
        let diff = lhs.span().sub(rhs.span())?.simplify();
        out.push(CheckReport::new(
            "affine.observable",
            norm(&q, &diff)? / norm(&q, a.span())?,
            INTERTWINE_TOL,
            started,
        ));
    }
    Ok(out)
}

/// Writes `rows` as CSV with the given header.
pub fn write_csv<I, R>(path: &Path, header: &[String], rows: I) -> std::io::Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

fn csv_error(e: std::io::Error) -> geoquant::error::Error {
    geoquant::error::Error::InvalidInput(format!("cannot write CSV: {e}"))
}

pub fn lattice_vacuum(s: &Settings) -> Result<Vec<CheckReport>> {
    let started = Instant::now();
    let model = build_lattice(s.sites, s.mass, s.spacing)?;
    let om = vacuum_form(&model)?;
    let mut err = om.max_abs_diff(&omega_from_j(model.phase_space(), model.complex_structure()));
    let g = two_point(&om)?;
    let n = s.sites as f64;
    for x in 0..s.sites {
        let mode_sum: f64 = (0..s.sites)
            .map(|k| (2.0 * PI * (k * x) as f64 / n).cos() / (n * s.spacing * dispersion(s.sites, s.mass, s.spacing, k)))
            .sum();
        err = err.max((g[(0, x)] - 0.5 * mode_sum).abs());
    }
    if let Some(path) = &s.out {
        let rows = vacuum_profile(&model)?
            .into_iter()
            .map(|(site, v)| vec![site.to_string(), format!("{v:.15e}")]);
        write_csv(path, &["site".into(), "value".into()], rows).map_err(csv_error)?;
    }
    Ok(vec![CheckReport::new("lattice.vacuum", err, LATTICE_TOL, started)])
}

/// The fixed demo: `phi K_0` on the unit oscillator against coherent states on the momentum axis.
pub fn density(s: &Settings) -> Result<Vec<CheckReport>> {
    let started = Instant::now();
    let ps = e1();
    let q = Quantization::from_complex_structure(&ps, &j0(&ps));
    let mut target = CoherentSpan::empty(Representation::SchrodingerReduced, 1);
    target.push(Term {
        coeff: C64::new(1.0, 0.0),
        label: geoquant::linalg::RVec::zeros(2),
        poly: Poly::var(1, 0),
    })?;
    let probe = density_probe(&q, &target, s.kmax)?;
    let increase = probe
        .residuals
        .windows(2)
        .map(|w| (w[1] - w[0]).max(0.0))
        .fold(0.0, f64::max);
    if let Some(path) = &s.out {
        let rows = probe
            .residuals
            .iter()
            .enumerate()
            .map(|(k, r)| vec![k.to_string(), format!("{r:.15e}")]);
        write_csv(path, &["k".into(), "residual".into()], rows).map_err(csv_error)?;
    }
    Ok(vec![CheckReport::new("density.monotone", increase, MONOTONE_TOL, started)])
}

/// Samples a reduced coherent state at random configurations.
pub fn sample(s: &Settings, path: &Path) -> Result<Vec<CheckReport>> {
    let started = Instant::now();
    let q = instance(s.seed, s.n)?;
    let mut r = rng(s.seed ^ 0x5A);
    let psi = CoherentSpan::coherent(Representation::SchrodingerReduced, &random_label(&mut r, 2 * s.n, 1.0));
    let mut rows = Vec::with_capacity(s.samples);
    for _ in 0..s.samples {
        let phi = random_label(&mut r, s.n, 2.0 * (s.n as f64).sqrt());
        let v = evaluate(&q, &psi, &phi)?;
        let mut row: Vec<String> = phi.iter().map(|x| format!("{x:.15e}")).collect();
        row.push(format!("{:.15e}", v.re));
        row.push(format!("{:.15e}", v.im));
        rows.push(row);
    }
    let mut header: Vec<String> = (1..=s.n).map(|k| format!("phi_{k}")).collect();
    header.extend(["re".to_string(), "im".to_string()]);
    write_csv(path, &header, rows).map_err(csv_error)?;
    let err = (norm(&q, &psi)? - 1.0).abs();
    Ok(vec![CheckReport::new("sample.norm", err, NORM_TOL, started)])
}

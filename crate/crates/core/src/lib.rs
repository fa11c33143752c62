//! Schrödinger and holomorphic quantization of finite-dimensional linear and
//! affine phase spaces, with the Bargmann transform between them.
//!
//! States are finite sums of coherent states with polynomial prefactors
//! ([`span::CoherentSpan`]); inner products, transforms and linear observables
//! act on them in closed form.
//!
//! ```
//! use geoquant::bargmann::transform;
//! use geoquant::fixtures::{e1, j0};
//! use geoquant::linalg::RVec;
//! use geoquant::quantization::Quantization;
//! use geoquant::span::{inner_product, CoherentSpan, Representation};
//!
//! let ps = e1();
//! let q = Quantization::from_complex_structure(&ps, &j0(&ps));
//! let psi = CoherentSpan::coherent(Representation::SchrodingerReduced, &RVec::from_row_slice(&[1.0, 2.0]));
//! let h = transform(&q, &psi).unwrap();
//! assert_eq!(h.rep(), Representation::HolomorphicNormalized);
//! assert!((inner_product(&q, &h, &h).unwrap().re - 1.0).abs() < 1e-14);
//! ```
//!
//! The guide in `book/` walks through each module.

pub mod affine;
pub mod bargmann;
pub mod correspondence;
pub mod error;
pub mod field_models;
pub mod fixtures;
pub mod gaussian;
pub mod holomorphic;
pub mod linalg;
pub mod observables;
pub mod phase_space;
pub mod poly;
pub mod quantization;
pub mod random;
pub mod schrodinger;
pub mod span;

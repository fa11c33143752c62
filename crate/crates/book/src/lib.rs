//! The chapters of `book/src`, one module each, so that `cargo test --doc`
//! compiles and runs every listing in the guide. mdbook itself cannot test
//! listings that depend on a workspace crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/phase-space.md")]
pub mod phase_space {}
#[doc = include_str!("../../../book/src/complex-structures.md")]
pub mod complex_structures {}
#[doc = include_str!("../../../book/src/coherent-states.md")]
pub mod coherent_states {}
#[doc = include_str!("../../../book/src/bargmann.md")]
pub mod bargmann {}
#[doc = include_str!("../../../book/src/observables.md")]
pub mod observables {}
#[doc = include_str!("../../../book/src/affine.md")]
pub mod affine {}
#[doc = include_str!("../../../book/src/lattice.md")]
pub mod lattice {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

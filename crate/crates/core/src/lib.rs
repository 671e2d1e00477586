//! Hamiltonian unfoldings of the Platonic solids and their perimeter-halving
//! refoldings.
//!
//! The pipeline runs solid → Hamiltonian cut path → planar net → zippings.
//! Nets are grouped up to planar congruence, and explicit flat-folding data
//! can be checked against a net with [`foldverify::verify_fold`].

mod error;

pub mod congruence;
pub mod foldverify;
pub mod geom;
pub mod hampath;
pub mod report;
pub mod solids;
pub mod svg;
pub mod unfold;
pub mod zipper;

pub use error::Error;

/// The guide's chapters, compiled so their examples run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/solids-and-paths.md")]
    mod solids_and_paths {}
    #[doc = include_str!("../../../book/src/nets.md")]
    mod nets {}
    #[doc = include_str!("../../../book/src/zipping.md")]
    mod zipping {}
    #[doc = include_str!("../../../book/src/congruence.md")]
    mod congruence {}
    #[doc = include_str!("../../../book/src/flat-folds.md")]
    mod flat_folds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/report.md")]
    mod report {}
}

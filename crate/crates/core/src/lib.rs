//! Time-dependent Casimir-Polder interactions between two ground-state atoms
//! in the field of a third, initially excited atom.
//!
//! Start from [`scene::Scene`], then ask [`correlations`] for the field
//! correlation at the two ground-state atoms or [`potentials`] for the energy
//! shifts. [`oracle`] holds the independent box-quantized and
//! finite-difference computations used to check them. Units are natural
//! (`ħ = c = 1`, lengths in `1/k0`); see [`scene`].

pub mod correlations;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod scene;
pub mod tensor;
pub mod terms;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scenes.md")]
    mod scenes {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/correlations.md")]
    mod correlations {}
    #[doc = include_str!("../../../book/src/energies.md")]
    mod energies {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/disagreements.md")]
    mod disagreements {}
}

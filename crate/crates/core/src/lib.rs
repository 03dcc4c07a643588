//! Resonant states and damping semigroups of the dilation generator
//! `Ĥ = -γ/2 (xp + px)`.
//!
//! Test functions with exact jets ([`testfn`]), regularized power
//! distributions and their Fourier transforms ([`dist`]), energy
//! eigenfunctions and residues at `±iγ(n+½)` ([`eigen`]), resonance and
//! continuum expansions ([`spectral`]), the unitary flow and its two
//! semigroups ([`dynamics`]), and a numerical Hardy-class probe ([`hardy`]).
//! [`verify`] and [`cli`] turn these into scored, reproducible reports.

// `!(x > 0.0)` is the NaN-rejecting form of a positivity check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dist;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod hardy;
pub mod jet;
pub mod quad;
pub mod report;
pub mod specfn;
pub mod spectral;
pub mod testfn;
pub mod verify;

pub use error::{Error, Result};

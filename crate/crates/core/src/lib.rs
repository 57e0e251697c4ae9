//! Core analyses for quantifying convergent learning between independently
//! trained networks.
//!
//! Everything here operates on in-memory activation matrices; file formats,
//! catalogs, and the command-line front end live in the companion `repalign`
//! crate. All randomized routines are seeded and deterministic: the same
//! inputs and seeds produce bit-identical results regardless of worker
//! count.
//!
//! The pipeline, bottom to top:
//!
//! * [`acts`] - the activation table and seeded row subsampling
//! * [`stats`] - per-unit means/stds and within-/between-net correlation
//! * [`mi`] - histogram mutual information with equal-mass percentile bins
//! * [`align`] - semi-matching and exact max-weight bipartite matching
//! * [`lasso`] - sparse linear mapping layers fit by coordinate descent
//! * [`hac`] - greedy average-linkage clustering of the block weight matrix
//! * [`spectral`] - spectral clustering of combined similarity graphs
//! * [`synth`] - synthetic two-net fixtures with known ground truth

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod acts;
pub mod align;
pub mod error;
pub mod hac;
pub mod lasso;
pub mod mat;
pub mod mi;
mod par;
pub mod spectral;
pub mod stats;
pub mod synth;

pub use acts::ActivationMatrix;
pub use error::{Error, Result};
pub use mat::Mat;

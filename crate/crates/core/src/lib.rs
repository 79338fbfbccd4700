//! Exact additive combinatorics over F_p^n.
//!
//! The crate covers sumset algebra and Plünnecke bounds, Fourier analysis on
//! F_p^n, a constructive Bogolyubov–Ruzsa pipeline with brute-force oracles,
//! the inner-product split-state non-malleable code together with an exact
//! linear program for its tampering distance, and the difference linearity
//! test. Everything is sized for exhaustive verification at small p and n.

pub mod bogolyubov;
pub mod error;
pub mod fourier;
pub mod fpn;
pub mod instances;
pub mod lintest;
pub mod nmc;
pub mod par;
pub mod rng;
pub mod setops;

pub use error::{Budget, LabError, Result};
pub use fpn::{FpSet, FpVec, GroupCtx, LinearMap, Subspace};

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

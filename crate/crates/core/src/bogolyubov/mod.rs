//! The Bogolyubov–Ruzsa pipeline at desk scale.
//!
//! Starting from a set A with small doubling the pipeline computes a gentle
//! shifting set X (shifts that barely change the A − A membership statistics
//! of a − b), takes V = span(Spec_{1/2}(X))^⊥ and verifies V ⊆ 2A − 2A by
//! membership. Every constant the asymptotic argument leaves unspecified is a
//! concrete, reported threshold here, and an exhaustive subspace search backs
//! the pipeline whenever verification fails.

mod croot;
mod gentle;
mod pipeline;
mod search;
mod thespace;

pub use croot::{croot_sisask_trial, CrootConfig, CrootReport, PigeonholeReport};
pub use gentle::{
    difference_counts, gentle_profile, gentle_shift_set, shift_closure_check, ShiftLevel,
    ShiftSetReport,
};
pub use pipeline::{brz_pipeline, quasi_pfr, BrzConfig, BrzMethod, BrzResult, QuasiPfrReport};
pub use search::{max_subspace_in, max_subspace_in_by_enumeration};
pub use thespace::{lemma_thespace_check, spec_perp_subspace, ThespaceReport};

//! The split-state inner-product code: messages go through an affine-evasive
//! set S ⊆ F_p, a message s is encoded as a uniformly random (L, R) with
//! ⟨L, R⟩ = s, and tampering acts on L and R independently.

mod code;
mod distance;
mod evasive;
pub mod simplex;
mod tamper;

pub use code::{decode, encode, encode_weights, Codeword, Decoded};
pub use distance::{family_distance, mixture_dist, total_variation, FamilyDistanceResult};
pub use evasive::{affine_profile, search_affine_evasive, AffineEvasiveSet, SearchMode};
pub use tamper::{
    joint_dist, nm_metric, tamper_experiment, JointDist, MessageOutcome, NmMetric, TamperPair,
    JOINT_MAX_PAIRS,
};

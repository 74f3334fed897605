//! Eigensystems of Hilbert newforms under inner conjugation and exterior
//! twists: orbits, stabilizers, the twist homomorphism and its fixed
//! fields, constituent-count checks and genus bookkeeping.

mod analysis;
mod dataset;
mod pipeline;
mod record;

pub use analysis::{
    compare_mod_prime, corollary_suite, eigensystem_mod_prime, genus_bookkeeping, is_base_change, orbit_action,
    phi_analysis, verify_identities, ConstituentFinding, CorollaryReport, Descent, IdentityCheck, ModPrimeMatch,
    OrbitTable, PhiReport, SpaceConstituent, SpaceSummary, FLAG_DATA_INCONSISTENT, FLAG_MUST_BE_BASE_CHANGE,
};
pub use dataset::{generate_worked_example, worked_example_summary, Dataset, Identity, DATASET_SEED, WORKED_EXAMPLE_JSON};
pub use pipeline::{analyze_dataset, DatasetAnalysis};
pub use record::{
    canonical_twist, compare_labels, exterior_twist, inner_conjugate, match_up_to_twist, EigensystemRecord,
    GaloisSetup,
};

use thiserror::Error;

use crate::ideals::IdealError;
use crate::number_field::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("no eigenvalue or Galois image stored for prime {0}")]
    MissingPrime(String),
    #[error("record {0}: automorphism or eigenvalue lives in a different field")]
    WrongField(String),
    #[error("conjugate {0} matches no listed orbit")]
    OrphanOrbit(String),
    #[error("records {0} and {1} lie in the same orbit")]
    DuplicateOrbit(String, String),
    #[error("orbit table is not a group action: {0}")]
    ActionViolation(String),
    #[error("data inconsistent with the twist homomorphism: {0}")]
    HomomorphismViolation(String),
    #[error("eigenvalue at {0} is not integral at the chosen prime")]
    NotPIntegral(String),
    #[error("constituent {0} has no Atkin-Lehner sign")]
    MissingSign(String),
    #[error("unknown record label {0}")]
    UnknownLabel(String),
    #[error("record {0}: no stored eigenvalue generates the coefficient field")]
    NoGeneratingEigenvalue(String),
    #[error("dataset schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[cfg(test)]
mod tests;

//! Number fields, their automorphisms, fixed fields and composita.

mod automorphism;
mod field;
mod subfield;

pub use automorphism::{AutGroup, NFAutomorphism};
pub use field::{NFElement, NumberField, DEFAULT_PRIME_BUDGET};
pub use subfield::{compositum, fixed_field, same_quadratic_field, Compositum, FixedField};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("defining polynomial must be monic, integral and nonconstant: {0}")]
    NotMonicIntegral(String),
    #[error("polynomial is reducible: {0}")]
    NotIrreducible(String),
    #[error("could not certify irreducibility: {0}")]
    IrreducibilityInconclusive(String),
    #[error("certificate does not check: {0}")]
    BadCertificate(String),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("operands belong to different number fields")]
    MixedParents,
    #[error("division by zero")]
    DivisionByZero,
    #[error("proposed image is not a root of the defining polynomial: {0}")]
    NotARoot(String),
    #[error("automorphism order exceeds the field degree {0}")]
    OrderExceedsDegree(usize),
    #[error("generated group has more than {0} elements")]
    ClosureExceedsDegree(usize),
    #[error("no generator of the fixed field found among the candidates")]
    GeneratorSearchExhausted,
    #[error("expected a field of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("fields are not linearly disjoint")]
    NotLinearlyDisjoint,
    #[error("element does not lie in the subfield")]
    NotInSubfield,
    #[error("{k} is not coprime to the conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("conductor {0} is too small")]
    ConductorTooSmall(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

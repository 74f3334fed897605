//! Statistical Galois-group certification: permutation-group models,
//! Frobenius cycle types and a report comparing them.

mod group;
mod report;
mod sample;

pub use group::{
    closure_order_with_multiplier, multiplier_order, partitions, quotient_generator_check, subgroup_closure_check,
    CycleType, GroupModel, Perm, MAX_FROBENIUS_PRIME, ORDER_CAP,
};
pub use report::{certify_group, CertReport, DensityRow, DiscriminantAnalysis, Verdict, DEFAULT_TOLERANCE};
pub use sample::{frobenius_sample, frobenius_type, FrobeniusSample};

use thiserror::Error;

use crate::algebra::{AlgebraError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("group order exceeds the enumeration cap {0}")]
    OrderCapExceeded(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown group specification {0:?}")]
    BadGroupSpec(String),
    #[error("polynomial degree {poly} does not match the group degree {group}")]
    DegreeMismatch { poly: usize, group: usize },
    #[error("polynomial must be monic and integral")]
    NotMonicIntegral,
    #[error("bad polynomial file: {0}")]
    BadData(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

const F17_DATA: &str = include_str!("../../data/frobenius17.json");

/// The degree-17 polynomial whose splitting field is expected to be the
/// `F17` extension unramified outside 2, with its provenance note.
pub fn f17_polynomial() -> (UniPoly, String) {
    let v: serde_json::Value = serde_json::from_str(F17_DATA).expect("bundled data parses");
    let poly = UniPoly::from_json(&v["poly"]).expect("bundled polynomial parses");
    (poly, v["provenance"].as_str().unwrap_or_default().to_string())
}

/// Reads a polynomial file: either a bare polynomial (coefficient list or
/// comma-separated text) or an object with a `"poly"` key.
pub fn read_polynomial(text: &str) -> Result<UniPoly, CertifyError> {
    let parsed = match serde_json::from_str::<serde_json::Value>(text) {
        Ok(v) if v.get("poly").is_some() => UniPoly::from_json(&v["poly"]),
        Ok(v) => UniPoly::from_json(&v),
        Err(_) => UniPoly::parse(text),
    };
    parsed.map_err(|e| CertifyError::BadData(e.to_string()))
}

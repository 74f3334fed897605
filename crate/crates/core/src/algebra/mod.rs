//! Exact arithmetic: rationals, dense polynomials over Q and over finite
//! fields, resultants, factorization modulo primes and irreducibility
//! certificates over Q.

pub mod factor;
pub mod finite;
pub mod finpoly;
pub mod irreducible;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod resultant;

pub use factor::{factor_mod_p, reduce_mod_p};
pub use finite::{FinField, FiniteField, PrimeField};
pub use finpoly::{FinPoly, FinPolyRing};
pub use irreducible::{certify_irreducible_over_q, IrreducibilityCertificate, Verdict, Witness};
pub use poly::UniPoly;
pub use rational::Q;
pub use resultant::{discriminant, discriminant_int, resultant};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial reduces to zero modulo the prime")]
    ZeroReduction,
    #[error("coefficient denominator divisible by {0}")]
    NotPIntegral(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("polynomial degree too small for this operation")]
    DegreeTooSmall,
    #[error("expected integer coefficients")]
    NotIntegral,
    #[error("parse error: {0}")]
    Parse(String),
}

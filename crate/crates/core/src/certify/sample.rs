//! Frobenius cycle types at unramified primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::group::CycleType;
use super::CertifyError;
use crate::algebra::rational::primes_up_to;
use crate::algebra::{discriminant_int, reduce_mod_p, FinPolyRing, PrimeField, UniPoly};

/// Cycle types of Frobenius at every prime up to a bound that does not
/// divide the discriminant.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusSample {
    pub max_prime: u64,
    pub seed: u64,
    /// Sampled primes with their types, ascending.
    pub observations: Vec<(u64, CycleType)>,
    /// Primes dividing the discriminant, skipped.
    pub skipped: Vec<u64>,
}

impl FrobeniusSample {
    pub fn primes_sampled(&self) -> usize {
        self.observations.len()
    }

    pub fn counts(&self) -> BTreeMap<CycleType, usize> {
        let mut out = BTreeMap::new();
        for (_, t) in &self.observations {
            *out.entry(t.clone()).or_default() += 1;
        }
        out
    }
}

/// Degree pattern of `f` modulo `p`; `f` must stay squarefree mod `p`.
pub fn frobenius_type(f: &UniPoly, p: u64) -> Result<CycleType, CertifyError> {
    let field = PrimeField::new(p)?;
    let reduced = reduce_mod_p(f, &field)?;
    Ok(CycleType::new(FinPolyRing::new(field).factor_degrees(&reduced)?))
}

/// Samples Frobenius types for all `p <= max_prime` with `p` not dividing
/// `disc(f)`. The work is split across threads; results are merged in
/// ascending order of `p`, so the output does not depend on the split.
/// The factor-degree computation is deterministic; `seed` is recorded only.
pub fn frobenius_sample(f: &UniPoly, max_prime: u64, seed: u64) -> Result<FrobeniusSample, CertifyError> {
    let disc = discriminant_int(f)?;
    frobenius_sample_with_disc(f, &disc, max_prime, seed)
}

pub(crate) fn frobenius_sample_with_disc(
    f: &UniPoly,
    disc: &BigInt,
    max_prime: u64,
    seed: u64,
) -> Result<FrobeniusSample, CertifyError> {
    let primes = primes_up_to(max_prime);
    let (skipped, good): (Vec<u64>, Vec<u64>) =
        primes.into_iter().partition(|&p| (disc % BigInt::from(p)).is_zero());
    let observations = good
        .par_iter()
        .map(|&p| frobenius_type(f, p).map(|t| (p, t)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FrobeniusSample { max_prime, seed, observations, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::pow_mod_u64;

    #[test]
    fn quadratic_splitting_follows_legendre() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let s = frobenius_sample(&f, 100, 1).unwrap();
        assert_eq!(s.skipped, vec![2]);
        for (p, t) in &s.observations {
            let split = pow_mod_u64(2, (p - 1) / 2, *p) == 1;
            assert_eq!(t.0, if split { vec![1, 1] } else { vec![2] }, "p = {p}");
        }
        assert_eq!(frobenius_type(&UniPoly::from_ints(&[1, 0, 1]), 5).unwrap().0, vec![1, 1]);
    }

    #[test]
    fn split_density_near_half() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let s = frobenius_sample(&f, 7919, 0).unwrap();
        let split = s.counts().get(&CycleType::new(vec![1, 1])).copied().unwrap_or(0);
        let freq = split as f64 / s.primes_sampled() as f64;
        assert!((freq - 0.5).abs() < 0.05, "{freq}");
        assert_eq!(s.counts().len(), 2);
    }

    #[test]
    fn deterministic_merge() {
        let f = UniPoly::from_ints(&[1, -1, 0, 0, 0, 1]);
        let a = frobenius_sample(&f, 2000, 1).unwrap();
        let b = frobenius_sample(&f, 2000, 2).unwrap();
        assert_eq!(a.observations, b.observations);
        assert!(a.observations.windows(2).all(|w| w[0].0 < w[1].0));
    }
}

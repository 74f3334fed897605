//! Factorization over finite fields: squarefree split, distinct-degree split,
//! then Cantor-Zassenhaus equal-degree split driven by a seeded stream.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::FiniteField;
use super::finpoly::{FinPoly, FinPolyRing};
use super::poly::UniPoly;
use super::AlgebraError;

/// Image of a rational polynomial under `Z_(p) -> F_p -> field`.
pub fn reduce_mod_p<F: FiniteField>(f: &UniPoly, field: &F) -> Result<FinPoly<F::Elem>, AlgebraError> {
    let p = field.characteristic();
    let pb = BigInt::from(p);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let d = c.denom().mod_floor(&pb).to_u64().unwrap();
            if d == 0 {
                return Err(AlgebraError::NotPIntegral(p));
            }
            let n = c.numer().mod_floor(&pb).to_u64().unwrap();
            let dinv = field.inv(&field.from_prime(d)).expect("d is a unit");
            Ok(field.mul(&field.from_prime(n), &dinv))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FinPoly::new(coeffs))
}

impl<F: FiniteField> FinPolyRing<F> {
    /// Squarefree decomposition of a nonzero polynomial: pairs `(g, m)` with
    /// `monic(f) = prod g^m`, each `g` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self, f: &FinPoly<F::Elem>) -> Vec<(FinPoly<F::Elem>, usize)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        if f.degree() < 1 {
            return out;
        }
        let p = self.field().characteristic() as usize;
        let mut c = self.gcd(&f, &self.derivative(&f));
        let mut w = self.quo(&f, &c);
        let mut i = 1;
        while !self.is_one(&w) {
            let y = self.gcd(&w, &c);
            let fac = self.quo(&w, &y);
            if fac.degree() > 0 {
                out.push((fac, i));
            }
            w = y;
            c = self.quo(&c, &w);
            i += 1;
        }
        if c.degree() > 0 {
            // c is a polynomial in x^p.
            let root = FinPoly::new(
                c.coeffs()
                    .iter()
                    .step_by(p)
                    .map(|a| self.field().pth_root(a))
                    .collect(),
            );
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree split of a monic squarefree polynomial: pairs `(g, d)`
    /// where `g` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &FinPoly<F::Elem>) -> Vec<(FinPoly<F::Elem>, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = self.x();
        let mut h = self.rem(&x, &rest);
        let mut d = 1usize;
        while rest.degree() >= 2 * d as isize {
            h = self.frobenius_mod(&h, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.degree() > 0 {
                rest = self.quo(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.degree() > 0 {
            let deg = rest.degree() as usize;
            out.push((rest, deg));
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(
        &self,
        f: &FinPoly<F::Elem>,
        d: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<FinPoly<F::Elem>> {
        let n = f.degree() as usize;
        if n == d {
            return vec![f.clone()];
        }
        let q = self.field().order();
        let char2 = self.field().characteristic() == 2;
        let exponent = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
        let trace_len = self.field().extension_degree() as usize * d;
        loop {
            let a = self.random(n, rng);
            if a.degree() < 1 {
                continue;
            }
            let b = if char2 {
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..trace_len {
                    t = self.mulmod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                self.sub(&self.powmod(&a, &exponent, f), &self.one())
            };
            let g = self.gcd(&b, f);
            if g.degree() > 0 && (g.degree() as usize) < n {
                let h = self.quo(f, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted canonically. Deterministic for a fixed seed.
    pub fn factor(
        &self,
        f: &FinPoly<F::Elem>,
        seed: u64,
    ) -> Result<Vec<(FinPoly<F::Elem>, usize)>, AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroReduction);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(f) {
            for (h, d) in self.distinct_degree(&g) {
                for irr in self.equal_degree(&h, d, &mut rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Degrees of the irreducible factors, with multiplicity, descending.
    /// Uses only the squarefree and distinct-degree stages.
    pub fn factor_degrees(&self, f: &FinPoly<F::Elem>) -> Result<Vec<usize>, AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroReduction);
        }
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(f) {
            for (h, d) in self.distinct_degree(&g) {
                let count = h.degree() as usize / d;
                out.extend(std::iter::repeat_n(d, count * m));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    pub fn is_squarefree(&self, f: &FinPoly<F::Elem>) -> bool {
        !f.is_zero() && self.gcd(f, &self.derivative(f)).degree() == 0
    }
}

/// Factors `f` modulo the characteristic of `field`, over `field`.
pub fn factor_mod_p<F: FiniteField>(
    f: &UniPoly,
    field: &F,
    seed: u64,
) -> Result<Vec<(FinPoly<F::Elem>, usize)>, AlgebraError> {
    let reduced = reduce_mod_p(f, field)?;
    FinPolyRing::new(field.clone()).factor(&reduced, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{FinField, PrimeField};
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Brute-force oracle: all monic irreducible quartics over F_2.
    fn irreducible_quartics_f2() -> Vec<Vec<u64>> {
        let ring = FinPolyRing::new(fp(2));
        let mut out = Vec::new();
        for bits in 0..16u64 {
            let c: Vec<u64> = (0..4).map(|i| (bits >> i) & 1).chain([1]).collect();
            let f = FinPoly::new(c.clone());
            // No factor of degree 1 or 2.
            let has_small_factor = (2..8u64).any(|g| {
                let gc: Vec<u64> = (0..3).map(|i| (g >> i) & 1).collect();
                let g = FinPoly::new(gc);
                g.degree() >= 1 && ring.rem(&f, &g).is_zero()
            });
            if !has_small_factor {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn coefficient_field_inert_at_two() {
        let quartics = irreducible_quartics_f2();
        assert_eq!(quartics.len(), 3);
        let f = UniPoly::from_ints(&[1, -4, -4, 1, 1]);
        let fac = factor_mod_p(&f, &fp(2), 42).unwrap();
        assert_eq!(fac, vec![(FinPoly::new(vec![1, 0, 0, 1, 1]), 1)]);
        assert!(quartics.contains(&vec![1, 0, 0, 1, 1]));
    }

    #[test]
    fn eisenstein_reduces_to_power_of_x() {
        let f = UniPoly::from_ints(&[2, 0, -16, 0, 20, 0, -8, 0, 1]);
        let fac = factor_mod_p(&f, &fp(2), 42).unwrap();
        assert_eq!(fac, vec![(FinPoly::new(vec![0, 1]), 8)]);
    }

    #[test]
    fn root_two_mod_seven() {
        // Oracle: trial over the seven residues.
        let roots: Vec<u64> = (0..7).filter(|r| (r * r) % 7 == 2).collect();
        assert_eq!(roots, vec![3, 4]);
        let fac = factor_mod_p(&UniPoly::from_ints(&[-2, 0, 1]), &fp(7), 42).unwrap();
        let expected: Vec<_> = roots.iter().map(|r| (FinPoly::new(vec![7 - r, 1]), 1)).collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(fac, expected);
    }

    #[test]
    fn zero_reduction_is_an_error() {
        let f = UniPoly::from_ints(&[3, 6]);
        assert_eq!(factor_mod_p(&f, &fp(3), 1), Err(AlgebraError::ZeroReduction));
        let g = UniPoly::new(vec![crate::algebra::rational::q_frac(1, 3)]);
        assert_eq!(factor_mod_p(&g, &fp(3), 1), Err(AlgebraError::NotPIntegral(3)));
    }

    #[test]
    fn factoring_over_gf16_splits_the_defining_quartic() {
        // Over F_16 = F_2[t]/(t^4+t^3+1) the same quartic has four roots.
        let k = FinField::new(2, FinPoly::new(vec![1, 0, 0, 1, 1])).unwrap();
        let f = UniPoly::from_ints(&[1, -4, -4, 1, 1]);
        let fac = factor_mod_p(&f, &k, 7).unwrap();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
        let ring = FinPolyRing::new(k.clone());
        assert!(fac.iter().any(|(g, _)| ring.eval(&reduce_mod_p(&f, &k).unwrap(), &k.neg(&g.coeffs()[0])) == k.zero()));
    }

    #[test]
    fn seeded_factorization_is_reproducible() {
        let f = UniPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = factor_mod_p(&f, &fp(97), 42).unwrap();
        let b = factor_mod_p(&f, &fp(97), 42).unwrap();
        assert_eq!(a, b);
        // 97 = 1 mod 32, so x^16 + 1 splits into linear factors.
        assert_eq!(a.len(), 16);
    }

    fn product<F: FiniteField>(ring: &FinPolyRing<F>, fac: &[(FinPoly<F::Elem>, usize)]) -> FinPoly<F::Elem> {
        fac.iter().fold(ring.one(), |acc, (g, m)| {
            (0..*m).fold(acc, |acc, _| ring.mul(&acc, g))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factor_product_identity(
            coeffs in prop::collection::vec(-30i64..=30, 2..14),
            pi in 0usize..15,
            seed in any::<u64>(),
        ) {
            let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
            let p = primes[pi];
            let f = UniPoly::from_ints(&coeffs);
            let field = fp(p);
            let ring = FinPolyRing::new(field);
            let reduced = reduce_mod_p(&f, &field).unwrap();
            prop_assume!(!reduced.is_zero());
            let fac = factor_mod_p(&f, &field, seed).unwrap();
            prop_assert_eq!(product(&ring, &fac), ring.monic(&reduced));
            for (g, _) in &fac {
                prop_assert!(ring.is_monic(g));
                prop_assert!(ring.is_irreducible(g));
            }
            let mut degs: Vec<usize> = fac.iter().flat_map(|(g, m)| std::iter::repeat_n(g.degree() as usize, *m)).collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(ring.factor_degrees(&reduced).unwrap(), degs);
        }
    }
}

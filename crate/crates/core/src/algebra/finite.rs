//! Finite fields: the prime field `F_p` with machine-word elements, and
//! `F_{p^k}` presented as `F_p[x]/(m)` for a verified irreducible `m`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::finpoly::{Coefficient, FinPoly, FinPolyRing};
use super::rational::{is_prime_u64, mul_mod_u64, pow_mod_u64};
use super::AlgebraError;

/// Arithmetic of a finite field with value-typed elements.
pub trait FiniteField: Clone + fmt::Debug + PartialEq {
    type Elem: Coefficient;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn extension_degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of a residue in `[0, p)` under `F_p -> self`.
    fn from_prime(&self, a: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.characteristic()), self.extension_degree() as usize)
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, &BigUint::from(self.characteristic()))
    }

    /// The unique `b` with `b^p = a`, i.e. `a^(p^(k-1))`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let mut b = a.clone();
        for _ in 1..self.extension_degree() {
            b = self.frobenius(&b);
        }
        b
    }
}

/// The prime field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue of a signed integer.
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn extension_degree(&self) -> u32 {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod_u64(*a, self.p - 2, self.p))
    }
    fn from_prime(&self, a: u64) -> u64 {
        a % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// `F_{p^k} = F_p[x]/(modulus)`. Elements are residues of degree `< k`,
/// stored as trimmed ascending coefficient vectors over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinField {
    base: PrimeField,
    modulus: Arc<FinPoly<u64>>,
}

impl fmt::Debug for FinField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.base.p, self.k(), self.modulus.coeffs())
    }
}

impl FinField {
    /// Builds `F_p[x]/(modulus)`; the modulus must be monic and irreducible.
    pub fn new(p: u64, modulus: FinPoly<u64>) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(p)?;
        let ring = FinPolyRing::new(base);
        let modulus = ring.normalize(modulus);
        if modulus.degree() < 1 || !ring.is_monic(&modulus) {
            return Err(AlgebraError::InvalidModulus("modulus must be monic of degree >= 1".into()));
        }
        if !ring.is_irreducible(&modulus) {
            return Err(AlgebraError::InvalidModulus(format!(
                "{:?} is reducible over F_{p}",
                modulus.coeffs()
            )));
        }
        Ok(Self { base, modulus: Arc::new(modulus) })
    }

    /// `F_p` itself, presented with modulus `x`.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        Self::new(p, FinPoly::new(vec![0, 1]))
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn k(&self) -> u32 {
        self.modulus.degree() as u32
    }

    pub fn modulus(&self) -> &FinPoly<u64> {
        &self.modulus
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn cardinality(&self) -> BigUint {
        self.order()
    }

    /// Class of the generator `x`.
    pub fn generator(&self) -> Vec<u64> {
        self.reduce(vec![0, 1])
    }

    /// Reduces an arbitrary polynomial over `F_p` into the field.
    pub fn reduce(&self, coeffs: Vec<u64>) -> Vec<u64> {
        let ring = FinPolyRing::new(self.base);
        let r = ring.rem(&FinPoly::new(coeffs.into_iter().map(|c| c % self.base.p).collect()), &self.modulus);
        r.into_coeffs()
    }
}

impl FiniteField for FinField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn extension_degree(&self) -> u32 {
        self.k()
    }
    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let ring = FinPolyRing::new(self.base);
        ring.add(&FinPoly::new(a.clone()), &FinPoly::new(b.clone())).into_coeffs()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let ring = FinPolyRing::new(self.base);
        ring.sub(&FinPoly::new(a.clone()), &FinPoly::new(b.clone())).into_coeffs()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let ring = FinPolyRing::new(self.base);
        let prod = ring.mul(&FinPoly::new(a.clone()), &FinPoly::new(b.clone()));
        ring.rem(&prod, &self.modulus).into_coeffs()
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.is_empty() {
            return None;
        }
        let ring = FinPolyRing::new(self.base);
        let (g, s, _) = ring.xgcd(&FinPoly::new(a.clone()), &self.modulus);
        // g is a nonzero constant because the modulus is irreducible.
        debug_assert_eq!(g.degree(), 0);
        let ginv = self.base.inv(&g.coeffs()[0])?;
        Some(ring.rem(&ring.scale(&s, &ginv), &self.modulus).into_coeffs())
    }
    fn from_prime(&self, a: u64) -> Vec<u64> {
        let a = a % self.base.p;
        if a == 0 {
            Vec::new()
        } else {
            vec![a]
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let v = (0..self.k()).map(|_| rng.gen_range(0..self.base.p)).collect();
        FinPoly::new(v).into_coeffs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn prime_field_arith() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.reduce_i64(-2), 5);
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    fn gf16_from_inert_reduction() {
        // x^4 + x^3 + 1 is irreducible over F_2.
        let k = FinField::new(2, FinPoly::new(vec![1, 0, 0, 1, 1])).unwrap();
        assert_eq!(k.cardinality(), BigUint::from(16u32));
        let g = k.generator();
        // Multiplicative order of x divides 15.
        assert_eq!(k.pow(&g, &BigUint::from(15u32)), k.one());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = k.random(&mut rng);
            if let Some(inv) = k.inv(&a) {
                assert_eq!(k.mul(&a, &inv), k.one());
            }
            assert_eq!(k.pth_root(&k.frobenius(&a)), a);
        }
        assert!(FinField::new(2, FinPoly::new(vec![1, 0, 1])).is_err());
    }
}

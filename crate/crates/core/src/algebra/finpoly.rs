//! Polynomials over a finite field.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::Rng;

use super::finite::FiniteField;

/// Finite-field element types know their own zero, which lets polynomials
/// normalize without a field handle.
pub trait Coefficient: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
}

impl Coefficient for u64 {
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
}

impl Coefficient for Vec<u64> {
    fn is_zero_coeff(&self) -> bool {
        self.is_empty()
    }
}

/// Polynomial over a finite field, ascending coefficients, no trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Coefficient> FinPoly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(Coefficient::is_zero_coeff) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl<E: fmt::Debug> fmt::Debug for FinPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPoly{:?}", self.coeffs)
    }
}

/// Polynomial arithmetic over a fixed finite field.
#[derive(Clone, Debug)]
pub struct FinPolyRing<F: FiniteField> {
    field: F,
}

impl<F: FiniteField> FinPolyRing<F> {
    pub fn new(field: F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn normalize(&self, p: FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        FinPoly::new(p.coeffs)
    }

    pub fn one(&self) -> FinPoly<F::Elem> {
        FinPoly::new(vec![self.field.one()])
    }

    pub fn x(&self) -> FinPoly<F::Elem> {
        FinPoly::new(vec![self.field.zero(), self.field.one()])
    }

    pub fn constant(&self, c: F::Elem) -> FinPoly<F::Elem> {
        FinPoly::new(vec![c])
    }

    pub fn is_monic(&self, p: &FinPoly<F::Elem>) -> bool {
        p.lc().is_some_and(|c| *c == self.field.one())
    }

    pub fn is_one(&self, p: &FinPoly<F::Elem>) -> bool {
        p.degree() == 0 && p.coeffs[0] == self.field.one()
    }

    fn coeff(&self, p: &FinPoly<F::Elem>, i: usize) -> F::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        FinPoly::new((0..n).map(|i| self.field.add(&self.coeff(a, i), &self.coeff(b, i))).collect())
    }

    pub fn sub(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        FinPoly::new((0..n).map(|i| self.field.sub(&self.coeff(a, i), &self.coeff(b, i))).collect())
    }

    pub fn scale(&self, a: &FinPoly<F::Elem>, c: &F::Elem) -> FinPoly<F::Elem> {
        FinPoly::new(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return FinPoly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero_coeff() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        FinPoly::new(out)
    }

    /// Quotient and remainder. Panics on a zero divisor; callers check.
    pub fn divrem(
        &self,
        a: &FinPoly<F::Elem>,
        b: &FinPoly<F::Elem>,
    ) -> (FinPoly<F::Elem>, FinPoly<F::Elem>) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return (FinPoly::zero(), a.clone());
        }
        let inv = self.field.inv(b.lc().unwrap()).expect("nonzero leading coefficient");
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[i + db], &inv);
            if !c.is_zero_coeff() {
                for (j, d) in b.coeffs.iter().enumerate() {
                    rem[i + j] = self.field.sub(&rem[i + j], &self.field.mul(&c, d));
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (FinPoly::new(quot), FinPoly::new(rem))
    }

    pub fn rem(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        self.divrem(a, b).1
    }

    pub fn quo(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        self.divrem(a, b).0
    }

    pub fn monic(&self, a: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        match a.lc() {
            None => a.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                self.scale(a, &inv)
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &FinPoly<F::Elem>, b: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g`; `g` is not normalized.
    pub fn xgcd(
        &self,
        a: &FinPoly<F::Elem>,
        b: &FinPoly<F::Elem>,
    ) -> (FinPoly<F::Elem>, FinPoly<F::Elem>, FinPoly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), FinPoly::zero());
        let (mut t0, mut t1) = (FinPoly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn derivative(&self, a: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        FinPoly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.from_prime(i as u64 % self.field.characteristic())))
                .collect(),
        )
    }

    pub fn mulmod(
        &self,
        a: &FinPoly<F::Elem>,
        b: &FinPoly<F::Elem>,
        m: &FinPoly<F::Elem>,
    ) -> FinPoly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &FinPoly<F::Elem>, e: &BigUint, m: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        let base = self.rem(base, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// `a^q mod m` for `q` the field order: the Frobenius of `F_q[x]/(m)`.
    pub fn frobenius_mod(&self, a: &FinPoly<F::Elem>, m: &FinPoly<F::Elem>) -> FinPoly<F::Elem> {
        self.powmod(a, &self.field.order(), m)
    }

    /// `a(b) mod m`.
    pub fn compose_mod(
        &self,
        a: &FinPoly<F::Elem>,
        b: &FinPoly<F::Elem>,
        m: &FinPoly<F::Elem>,
    ) -> FinPoly<F::Elem> {
        let mut acc = FinPoly::zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mulmod(&acc, b, m), &self.constant(c.clone()));
        }
        self.rem(&acc, m)
    }

    pub fn eval(&self, a: &FinPoly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// Uniformly random polynomial of degree `< n`.
    pub fn random<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> FinPoly<F::Elem> {
        FinPoly::new((0..n).map(|_| self.field.random(rng)).collect())
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
    /// and `gcd(x^(q^(n/r)) - x, f) = 1` for each prime `r | n`.
    pub fn is_irreducible(&self, f: &FinPoly<F::Elem>) -> bool {
        let n = f.degree();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as usize;
        let f = self.monic(f);
        let x = self.x();
        let mut powers = Vec::with_capacity(n + 1);
        let mut cur = self.rem(&x, &f);
        powers.push(cur.clone());
        for _ in 0..n {
            cur = self.frobenius_mod(&cur, &f);
            powers.push(cur.clone());
        }
        // powers[i] = x^(q^i) mod f
        if powers[n] != self.rem(&x, &f) {
            return false;
        }
        super::rational::prime_factors_u64(n as u64).into_iter().all(|r| {
            let h = self.sub(&powers[n / r as usize], &x);
            self.gcd(&h, &f).degree() == 0
        })
    }
}

//! Cyclotomic fields `Q(zeta_n)`, their Galois maps and real subfields.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::algebra::linalg::solve_in_span;
use crate::algebra::rational::{gcd_u64, q_int, totient};
use crate::algebra::{IrreducibilityCertificate, UniPoly, Q};
use crate::number_field::{FieldError, NFAutomorphism, NFElement, NumberField};

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for
/// every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, UniPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let mut num = &UniPoly::monomial(Q::one(), n as usize) - &UniPoly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = num.divrem(&cyclotomic_poly(d)).expect("Phi_d is nonzero");
        debug_assert!(r.is_zero());
        num = q;
    }
    cache.lock().expect("cache lock").insert(n, num.clone());
    num
}

/// `Q(zeta_n)` on the power basis of `zeta`, with `zeta -> zeta^k` for `k`
/// coprime to `n` as its automorphisms.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: u64,
    field: NumberField,
    real: OnceLock<RealSubfield>,
}

/// `Q(zeta + zeta^-1)` inside `Q(zeta)`.
#[derive(Clone, Debug)]
pub struct RealSubfield {
    /// The real subfield on the power basis of `eta = zeta + zeta^-1`.
    pub field: NumberField,
    /// `eta` in `Q(zeta)`.
    pub eta: NFElement,
    // eta^0 .. eta^(d-1) in zeta coordinates
    columns: Vec<Vec<Q>>,
}

impl RealSubfield {
    /// Writes an element of `Q(zeta)` lying in the real subfield on the
    /// `eta` basis.
    pub fn to_real(&self, x: &NFElement) -> Result<NFElement, FieldError> {
        let c = solve_in_span(&self.columns, x.coords()).ok_or(FieldError::NotInSubfield)?;
        self.field.element(c)
    }

    /// Maps an element of the real subfield back into `Q(zeta)`.
    pub fn from_real(&self, y: &NFElement) -> NFElement {
        self.eta.eval_poly(&y.as_poly())
    }
}

impl CyclotomicField {
    pub fn new(n: u64) -> Result<Self, FieldError> {
        if n < 3 {
            return Err(FieldError::ConductorTooSmall(n));
        }
        let phi = cyclotomic_poly(n);
        let cert = IrreducibilityCertificate::cyclotomic(&phi, n).expect("Phi_n is cyclotomic");
        Ok(Self { n, field: NumberField::with_certificate(phi, cert)?, real: OnceLock::new() })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn zeta(&self) -> NFElement {
        self.field.generator()
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> NFElement {
        let e = k.rem_euclid(self.n as i64) as usize;
        self.field.from_poly(&UniPoly::monomial(Q::one(), e))
    }

    fn unit(&self, k: i64) -> Result<i64, FieldError> {
        let r = k.rem_euclid(self.n as i64);
        if gcd_u64(r as u64, self.n) != 1 {
            return Err(FieldError::NotCoprime { k, n: self.n });
        }
        Ok(r)
    }

    /// `zeta -> zeta^k`.
    pub fn galois_map(&self, k: i64) -> Result<NFAutomorphism, FieldError> {
        let k = self.unit(k)?;
        NFAutomorphism::new(self.zeta_pow(k))
    }

    /// Units modulo `n`, ascending.
    pub fn units(&self) -> Vec<u64> {
        (1..self.n).filter(|&k| gcd_u64(k, self.n) == 1).collect()
    }

    /// The real subfield, computed once and cached with its change of basis.
    pub fn real_subfield(&self) -> &RealSubfield {
        self.real.get_or_init(|| {
            let eta = &self.zeta() + &self.zeta_pow(-1);
            let m = eta.minimal_polynomial();
            let cert = IrreducibilityCertificate::subfield(
                &m,
                self.field.defining_poly(),
                self.field.certificate(),
                eta.coords().to_vec(),
            )
            .expect("minimal polynomial of an element of a certified field");
            let field = NumberField::with_certificate(m, cert).expect("certified above");
            let d = field.degree();
            let mut columns = Vec::with_capacity(d);
            let mut p = self.field.one();
            for _ in 0..d {
                columns.push(p.coords().to_vec());
                p = &p * &eta;
            }
            RealSubfield { field, eta, columns }
        })
    }

    /// The automorphism of the real subfield sending `zeta + zeta^-1` to
    /// `zeta^k + zeta^-k`.
    pub fn restrict_to_real(&self, k: i64) -> Result<NFAutomorphism, FieldError> {
        let k = self.unit(k)?;
        let real = self.real_subfield();
        let image = &self.zeta_pow(k) + &self.zeta_pow(-k);
        NFAutomorphism::new(real.to_real(&image)?)
    }

    /// All units `k` whose restriction to the real subfield equals `target`.
    pub fn units_restricting_to(&self, target: &NFAutomorphism) -> Vec<u64> {
        self.units()
            .into_iter()
            .filter(|&k| self.restrict_to_real(k as i64).is_ok_and(|a| a == *target))
            .collect()
    }
}

/// Multiplicative order of `k` modulo `n`.
pub fn unit_order(k: u64, n: u64) -> u64 {
    let mut x = k % n;
    let mut ord = 1;
    while x != 1 % n {
        x = x * k % n;
        ord += 1;
    }
    ord
}

/// In `Q(zeta_64)`, with `i = zeta^16`, `alpha = zeta^2 + zeta^-2` and
/// `beta = i (zeta + zeta^-1)`: whether `beta^2 = -2 - alpha`.
pub fn check_beta_identity() -> bool {
    check_beta_identity_variant(true)
}

/// As [`check_beta_identity`], optionally dropping the factor `i` from
/// `beta` (which must then fail).
pub fn check_beta_identity_variant(with_i: bool) -> bool {
    let (c, beta) = beta_element(with_i);
    let alpha = &c.zeta_pow(2) + &c.zeta_pow(-2);
    &beta * &beta == &c.field().from_rational(q_int(-2)) - &alpha
}

/// Minimal polynomial of `beta = i (zeta_64 + zeta_64^-1)` over Q.
pub fn beta_minimal_polynomial() -> UniPoly {
    beta_element(true).1.minimal_polynomial()
}

fn beta_element(with_i: bool) -> (CyclotomicField, NFElement) {
    let c = CyclotomicField::new(64).expect("64 >= 3");
    let real = &c.zeta() + &c.zeta_pow(-1);
    let beta = if with_i { &c.zeta_pow(16) * &real } else { real };
    (c, beta)
}

/// Euler's totient, re-exported for degree checks.
pub fn euler_phi(n: u64) -> u64 {
    totient(n)
}

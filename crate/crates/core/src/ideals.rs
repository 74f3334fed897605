//! Primes of `Z[theta]` above a rational prime, via the Dedekind criterion.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::irreducible::is_eisenstein_coeffs;
use crate::algebra::rational::is_prime_u64;
use crate::algebra::{reduce_mod_p, AlgebraError, FinField, FinPoly, FinPolyRing, FiniteField, PrimeField, UniPoly};
use crate::number_field::{FieldError, NFAutomorphism, NFElement, NumberField};

/// Seed for the equal-degree splitting inside prime factorization; the
/// canonical ordering makes the result independent of it.
const FACTOR_SEED: u64 = 0x5eed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} divides the index of Z[theta] in the maximal order; the Dedekind test leaves {witness} over F_{p}")]
    IndexDivisor { p: u64, witness: String },
    #[error("no prime above {0} matches the image")]
    NoMatch(u64),
    #[error("prime {0} does not belong to this factorization")]
    ForeignPrime(String),
    #[error("element is not {0}-integral")]
    NotPIntegral(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<AlgebraError> for IdealError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NotPIntegral(p) => IdealError::NotPIntegral(p),
            AlgebraError::NotPrime(p) => IdealError::NotPrime(p),
            other => IdealError::Algebra(other),
        }
    }
}

/// The prime `(p, g(theta))`, with ramification index `e` and residue
/// degree `f = deg g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    pub g: FinPoly<u64>,
    pub e: usize,
    pub f: usize,
    pub label: String,
}

impl PrimeIdeal {
    /// `F_p[x]/(g)`, the residue field.
    pub fn residue_field(&self) -> FinField {
        FinField::new(self.p, self.g.clone()).expect("local generator is irreducible")
    }

    /// Image of `x` in the residue field.
    pub fn reduce(&self, x: &NFElement) -> Result<Vec<u64>, IdealError> {
        residue_reduce(x, self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "g": self.g.coeffs(),
            "e": self.e,
            "f": self.f,
            "label": self.label,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, IdealError> {
        let bad = || IdealError::Field(FieldError::Parse(format!("bad prime ideal {v}")));
        let int = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(bad);
        let g = v
            .get("g")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_u64().ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            p: int("p")?,
            g: FinPoly::new(g),
            e: int("e")? as usize,
            f: int("f")? as usize,
            label: v.get("label").and_then(Value::as_str).ok_or_else(bad)?.to_string(),
        })
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (e={}, f={})", self.label, self.e, self.f)
    }
}

/// All primes of `Z[theta]` above `p`, in canonical order.
#[derive(Clone, Debug)]
pub struct FactoredPrime {
    pub p: u64,
    pub field: NumberField,
    pub factors: Vec<PrimeIdeal>,
}

impl FactoredPrime {
    pub fn by_label(&self, label: &str) -> Option<&PrimeIdeal> {
        self.factors.iter().find(|q| q.label == label)
    }

    pub fn index_of(&self, prime: &PrimeIdeal) -> Option<usize> {
        self.factors.iter().position(|q| q == prime)
    }

    pub fn is_unramified(&self) -> bool {
        self.factors.iter().all(|q| q.e == 1)
    }

    /// `(e, f)` pairs in canonical order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|q| (q.e, q.f)).collect()
    }

    /// The permutation of the factors induced by `a`: entry `i` is the
    /// index of `a(P_i)`.
    pub fn permutation(&self, a: &NFAutomorphism) -> Result<Vec<usize>, IdealError> {
        self.factors
            .iter()
            .map(|q| {
                let img = galois_act_prime(a, q, self)?;
                Ok(self.index_of(&img).expect("image is one of the factors"))
            })
            .collect()
    }
}

/// `p` divides every non-leading coefficient and `p^2` does not divide the
/// constant term.
pub fn is_eisenstein(f: &UniPoly, p: u64) -> bool {
    f.integer_coeffs().is_some_and(|c| f.is_monic() && is_eisenstein_coeffs(&c, p))
}

fn lift(g: &FinPoly<u64>) -> UniPoly {
    UniPoly::from_bigints(&g.coeffs().iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

/// Factors `p` in `Z[theta]` when the Dedekind criterion shows that
/// `Z[theta]` is `p`-maximal.
pub fn dedekind_factor(field: &NumberField, p: u64) -> Result<FactoredPrime, IdealError> {
    if !is_prime_u64(p) {
        return Err(IdealError::NotPrime(p));
    }
    let f = field.defining_poly();
    let n = field.degree();
    if is_eisenstein(f, p) {
        let prime = PrimeIdeal { p, g: FinPoly::new(vec![0, 1]), e: n, f: 1, label: format!("{p}.1") };
        return Ok(FactoredPrime { p, field: field.clone(), factors: vec![prime] });
    }
    let fp = PrimeField::new(p)?;
    let ring = FinPolyRing::new(fp);
    let fbar = reduce_mod_p(f, &fp)?;
    let factors = ring.factor(&fbar, FACTOR_SEED)?;

    // Dedekind: g = prod g_i, h = prod g_i^(e_i - 1), F = (g h - f) / p.
    let mut g_star = UniPoly::one();
    let mut h_star = UniPoly::one();
    for (gi, ei) in &factors {
        let gl = lift(gi);
        g_star = &g_star * &gl;
        h_star = &h_star * &gl.pow(*ei as u32 - 1);
    }
    let diff = &(&g_star * &h_star) - f;
    let big_f = diff.scale(&crate::algebra::Q::new(BigInt::from(1), BigInt::from(p)));
    let fbar_big = reduce_mod_p(&big_f, &fp)?;
    let common = ring.gcd(&ring.gcd(&fbar_big, &reduce_mod_p(&g_star, &fp)?), &reduce_mod_p(&h_star, &fp)?);
    if common.degree() > 0 {
        return Err(IdealError::IndexDivisor { p, witness: format!("{:?}", common.coeffs()) });
    }

    let primes: Vec<PrimeIdeal> = factors
        .into_iter()
        .enumerate()
        .map(|(i, (g, e))| PrimeIdeal {
            p,
            f: g.degree() as usize,
            g,
            e,
            label: format!("{p}.{}", i + 1),
        })
        .collect();
    debug_assert_eq!(primes.iter().map(|q| q.e * q.f).sum::<usize>(), n);
    Ok(FactoredPrime { p, field: field.clone(), factors: primes })
}

/// Image of a `p`-integral element in the residue field of `prime`.
pub fn residue_reduce(x: &NFElement, prime: &PrimeIdeal) -> Result<Vec<u64>, IdealError> {
    let fp = PrimeField::new(prime.p)?;
    let r = reduce_mod_p(&x.as_poly(), &fp)?;
    Ok(prime.residue_field().reduce(r.into_coeffs()))
}

/// `a(P)`: the factor `Q` of `ctx` with `g_Q(a^-1(theta)) = 0` modulo `P`.
pub fn galois_act_prime(
    a: &NFAutomorphism,
    prime: &PrimeIdeal,
    ctx: &FactoredPrime,
) -> Result<PrimeIdeal, IdealError> {
    if ctx.index_of(prime).is_none() {
        return Err(IdealError::ForeignPrime(prime.label.clone()));
    }
    if ctx.factors.len() == 1 {
        return Ok(prime.clone());
    }
    let inv = a.inverse();
    let k = prime.residue_field();
    let t = residue_reduce(inv.image(), prime)?;
    let mut hits = ctx.factors.iter().filter(|q| {
        q.e == prime.e
            && q.f == prime.f
            && q.g.coeffs().iter().rev().fold(k.zero(), |acc, c| {
                k.add(&k.mul(&acc, &t), &k.from_prime(*c))
            }).is_empty()
    });
    match (hits.next(), hits.next()) {
        (Some(q), None) => Ok(q.clone()),
        _ => Err(IdealError::NoMatch(prime.p)),
    }
}

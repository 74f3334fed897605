//! Number fields `Q[x]/(f)` and their elements on the power basis.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::FieldError;
use crate::algebra::linalg::IncrementalBasis;
use crate::algebra::rational::{format_rational, mul_mod_u64, parse_rational, pow_mod_u64};
use crate::algebra::{certify_irreducible_over_q, IrreducibilityCertificate, UniPoly, Verdict, Q};

/// Primes tried by [`NumberField::new`] before giving up.
pub const DEFAULT_PRIME_BUDGET: usize = 300;

struct FieldData {
    poly: UniPoly,
    degree: usize,
    certificate: IrreducibilityCertificate,
    // reduction[i] = x^(n+i) on the power basis, for i < n - 1; integral
    // since f is monic and integral
    reduction: Vec<Vec<BigInt>>,
    signature: OnceLock<(usize, usize)>,
}

/// A number field `Q(theta)`, `theta` a root of a monic integral irreducible
/// polynomial. Cloning is cheap; clones compare equal.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    /// Builds `Q[x]/(f)`, certifying irreducibility first.
    pub fn new(f: UniPoly) -> Result<Self, FieldError> {
        Self::check_shape(&f)?;
        let cert = certify_irreducible_over_q(&f, DEFAULT_PRIME_BUDGET);
        Self::with_certificate(f, cert)
    }

    /// Builds the field from a caller-supplied certificate, which is
    /// re-checked.
    pub fn with_certificate(f: UniPoly, certificate: IrreducibilityCertificate) -> Result<Self, FieldError> {
        Self::check_shape(&f)?;
        match certificate.verdict {
            Verdict::Reducible => return Err(FieldError::NotIrreducible(certificate.to_string())),
            Verdict::Inconclusive => {
                return Err(FieldError::IrreducibilityInconclusive(certificate.to_string()))
            }
            Verdict::Irreducible => {}
        }
        if !certificate.check(&f) {
            return Err(FieldError::BadCertificate(certificate.to_string()));
        }
        let n = f.degree() as usize;
        let mut reduction = Vec::with_capacity(n.saturating_sub(1));
        let mut cur: Vec<Q> = (0..n).map(|i| -f.coeff(i)).collect();
        for _ in 0..n.saturating_sub(1) {
            reduction.push(cur.iter().map(|c| c.to_integer()).collect());
            // multiply by x
            let top = cur[n - 1].clone();
            let mut next = vec![Q::zero(); n];
            next[1..n].clone_from_slice(&cur[..n - 1]);
            if !top.is_zero() {
                for (i, c) in next.iter_mut().enumerate() {
                    *c -= &top * f.coeff(i);
                }
            }
            cur = next;
        }
        Ok(Self(Arc::new(FieldData {
            poly: f,
            degree: n,
            certificate,
            reduction,
            signature: OnceLock::new(),
        })))
    }

    fn check_shape(f: &UniPoly) -> Result<(), FieldError> {
        if f.degree() < 1 || !f.is_monic() || !f.is_integral() {
            return Err(FieldError::NotMonicIntegral(f.to_string()));
        }
        Ok(())
    }

    /// The element with coordinates `nums / den`.
    pub(crate) fn from_scaled(&self, nums: Vec<BigInt>, den: &BigInt) -> NFElement {
        let coords = nums.into_iter().map(|c| Q::new(c, den.clone())).collect();
        NFElement { field: self.clone(), coords }
    }

    /// The field Q, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new(UniPoly::x()).expect("x is irreducible")
    }

    pub fn defining_poly(&self) -> &UniPoly {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn certificate(&self) -> &IrreducibilityCertificate {
        &self.0.certificate
    }

    /// `(r1, r2)`: real embeddings and pairs of complex embeddings.
    pub fn signature(&self) -> (usize, usize) {
        *self.0.signature.get_or_init(|| {
            let r1 = self.0.poly.count_real_roots();
            (r1, (self.0.degree - r1) / 2)
        })
    }

    pub fn is_totally_real(&self) -> bool {
        self.signature().0 == self.degree()
    }

    pub fn element(&self, coords: Vec<Q>) -> Result<NFElement, FieldError> {
        if coords.len() != self.degree() {
            return Err(FieldError::WrongLength { expected: self.degree(), got: coords.len() });
        }
        Ok(NFElement { field: self.clone(), coords })
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<NFElement, FieldError> {
        self.element(coords.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    /// Image of a polynomial in the generator, reduced.
    pub fn from_poly(&self, p: &UniPoly) -> NFElement {
        let mut coords = vec![Q::zero(); self.degree()];
        let mut wide = p.coeffs().to_vec();
        wide.resize(wide.len().max(self.degree()), Q::zero());
        // Reduce from the top down using x^n = -sum a_i x^i.
        let n = self.degree();
        let f = &self.0.poly;
        for k in (n..wide.len()).rev() {
            let c = std::mem::replace(&mut wide[k], Q::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let fi = f.coeff(i);
                if !fi.is_zero() {
                    wide[k - n + i] -= &c * fi;
                }
            }
        }
        coords.clone_from_slice(&wide[..n]);
        NFElement { field: self.clone(), coords }
    }

    pub fn from_rational(&self, q: Q) -> NFElement {
        let mut coords = vec![Q::zero(); self.degree()];
        coords[0] = q;
        NFElement { field: self.clone(), coords }
    }

    pub fn zero(&self) -> NFElement {
        self.from_rational(Q::zero())
    }

    pub fn one(&self) -> NFElement {
        self.from_rational(Q::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> NFElement {
        self.from_poly(&UniPoly::x())
    }

    pub fn to_json(&self) -> Value {
        json!({ "poly": self.defining_poly().to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, FieldError> {
        let poly = v
            .get("poly")
            .ok_or_else(|| FieldError::Parse("number field needs \"poly\"".into()))?;
        Self::new(UniPoly::from_json(poly)?)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for NumberField {}

impl Hash for NumberField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.poly.hash(state);
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.poly)
    }
}

const GENERATOR_TEST_PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 2_147_483_647];

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod_u64(rows[rank][c], p - 2, p);
        for r in rank + 1..rows.len() {
            let factor = mul_mod_u64(rows[r][c], inv, p);
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                let sub = mul_mod_u64(factor, rows[rank][k], p);
                rows[r][k] = (rows[r][k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer numerators over one positive common denominator.
pub(crate) fn clear_denominators(coords: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = coords.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let nums = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Element of a number field, as coordinates on `1, theta, ..., theta^(n-1)`.
///
/// The arithmetic operators panic when the operands live in different
/// fields; the `try_*` methods report [`FieldError::MixedParents`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NFElement {
    field: NumberField,
    coords: Vec<Q>,
}

impl NFElement {
    pub fn parent(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The representing polynomial of degree `< n`.
    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(self.coords.clone())
    }

    fn same_parent(&self, other: &NFElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedParents)
        }
    }

    pub fn try_add(&self, other: &NFElement) -> Result<NFElement, FieldError> {
        self.same_parent(other)?;
        Ok(NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &NFElement) -> Result<NFElement, FieldError> {
        self.same_parent(other)?;
        Ok(NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &NFElement) -> Result<NFElement, FieldError> {
        self.same_parent(other)?;
        let n = self.field.degree();
        let (a, da) = clear_denominators(&self.coords);
        let (b, db) = clear_denominators(&other.coords);
        let mut wide = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut nums: Vec<BigInt> = wide[..n].to_vec();
        for (k, c) in wide[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (dst, r) in nums.iter_mut().zip(&self.field.0.reduction[k]) {
                if !r.is_zero() {
                    *dst += c * r;
                }
            }
        }
        Ok(self.field.from_scaled(nums, &(da * db)))
    }

    pub fn scale(&self, q: &Q) -> NFElement {
        NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended gcd with the defining polynomial.
    pub fn inverse(&self) -> Result<NFElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().xgcd(self.field.defining_poly());
        debug_assert!(g == UniPoly::one());
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, e: u32) -> NFElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> NFElement {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * self) + &self.field.from_rational(c.clone()))
    }

    /// Whether this element generates the field, i.e. its minimal
    /// polynomial has full degree.
    ///
    /// Independence of `1, x, ..., x^(n-1)` modulo a prime implies it over
    /// Q, so a few primes usually settle this without exact linear algebra;
    /// otherwise the minimal polynomial decides.
    pub fn generates_field(&self) -> bool {
        let n = self.field.degree();
        for p in GENERATOR_TEST_PRIMES {
            if let Some(true) = self.powers_independent_mod(p) {
                return true;
            }
        }
        self.minimal_polynomial().degree() as usize == n
    }

    fn powers_independent_mod(&self, p: u64) -> Option<bool> {
        let n = self.field.degree();
        let reduce = |q: &Q| -> Option<u64> {
            let m = BigInt::from(p);
            let d = q.denom().mod_floor(&m);
            if d.is_zero() {
                return None;
            }
            let num = u64::try_from(q.numer().mod_floor(&m)).expect("reduced below p");
            let den = u64::try_from(d).expect("reduced below p");
            Some(mul_mod_u64(num, pow_mod_u64(den, p - 2, p), p))
        };
        let x: Vec<u64> = self.coords.iter().map(reduce).collect::<Option<_>>()?;
        let red: Vec<Vec<u64>> = self
            .field
            .0
            .reduction
            .iter()
            .map(|r| r.iter().map(|c| u64::try_from(c.mod_floor(&BigInt::from(p))).expect("below p")).collect())
            .collect();
        let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut wide = vec![0u64; 2 * n - 1];
            for (i, &u) in a.iter().enumerate() {
                for (j, &v) in b.iter().enumerate() {
                    wide[i + j] = (wide[i + j] + mul_mod_u64(u, v, p)) % p;
                }
            }
            let mut out = wide[..n].to_vec();
            for (k, &c) in wide[n..].iter().enumerate() {
                for (o, &r) in out.iter_mut().zip(&red[k]) {
                    *o = (*o + mul_mod_u64(c, r, p)) % p;
                }
            }
            out
        };
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut power = vec![0u64; n];
        power[0] = 1;
        for _ in 0..n {
            rows.push(power.clone());
            power = mul(&power, &x);
        }
        Some(rank_mod(rows, p) == n)
    }

    /// Monic minimal polynomial over Q: the first linear dependency among
    /// `1, x, x^2, ...`.
    pub fn minimal_polynomial(&self) -> UniPoly {
        let mut basis = IncrementalBasis::new();
        let mut power = self.field.one();
        loop {
            if let Some(dep) = basis.insert(power.coords.clone()) {
                return UniPoly::new(dep);
            }
            power = &power * self;
        }
    }

    /// Trace of multiplication-by-self.
    pub fn trace(&self) -> Q {
        let n = self.field.degree();
        let mut t = Q::zero();
        for i in 0..n {
            let basis = self.field.from_poly(&UniPoly::monomial(Q::one(), i));
            t += (self * &basis).coords[i].clone();
        }
        t
    }

    pub fn to_json(&self) -> Value {
        json!({ "coords": self.coords.iter().map(format_rational).collect::<Vec<_>>() })
    }

    pub fn from_json(field: &NumberField, v: &Value) -> Result<Self, FieldError> {
        let arr = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| FieldError::Parse("element needs a \"coords\" array".into()))?;
        let coords = arr
            .iter()
            .map(|c| match c {
                Value::String(s) => parse_rational(s).map_err(FieldError::from),
                Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
                other => Err(FieldError::Parse(format!("bad coordinate {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        field.element(coords)
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, rhs: &NFElement) -> NFElement {
        self.try_add(rhs).expect("elements of different number fields")
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, rhs: &NFElement) -> NFElement {
        self.try_sub(rhs).expect("elements of different number fields")
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, rhs: &NFElement) -> NFElement {
        self.try_mul(rhs).expect("elements of different number fields")
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        self.scale(&-Q::one())
    }
}

//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::rational::{rational_from_json, rational_to_json, Q};
use super::AlgebraError;

/// Polynomial with exact rational coefficients, ascending degree order.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and `degree()` is `-1` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut coeffs = vec![Q::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Q::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// `(c, P)` with `self = c * P`, `P` integral and primitive with positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, den), prim)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * inner) + &UniPoly::constant(c.clone()))
    }

    /// `self(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let lc_inv = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly, AlgebraError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive_like();
        }
        a.monic()
    }

    // Scales to keep coefficient growth in check during the Euclidean loop;
    // any nonzero scalar multiple is fine there.
    fn primitive_like(self) -> UniPoly {
        if self.is_zero() {
            return self;
        }
        let (_, p) = self.primitive_part();
        UniPoly::from_bigints(&p)
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("r1 is nonzero");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() < 1 {
            return 0;
        }
        let g = self.gcd(&self.derivative());
        let sqfree = self.divrem(&g).expect("gcd nonzero").0;
        let mut chain = vec![sqfree.clone(), sqfree.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).expect("chain entries nonzero");
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        let variations = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
        let at_pos_inf = chain.iter().map(|p| p.lc().is_positive()).collect();
        let at_neg_inf = chain
            .iter()
            .map(|p| p.lc().is_positive() == (p.degree() % 2 == 0))
            .collect();
        variations(at_neg_inf) - variations(at_pos_inf)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let arr = v
            .as_array()
            .ok_or_else(|| AlgebraError::Parse("polynomial must be a JSON array".into()))?;
        Ok(Self::new(arr.iter().map(rational_from_json).collect::<Result<_, _>>()?))
    }

    /// Accepts a JSON array or comma-separated ascending coefficients
    /// (`"2,0,-16"` or `"[2,0,-16]"`; entries may be `p/q`).
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        if s.starts_with('[') {
            let v: Value =
                serde_json::from_str(s).map_err(|e| AlgebraError::Parse(e.to_string()))?;
            return Self::from_json(&v);
        }
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        Ok(Self::new(
            s.split(',')
                .map(super::rational::parse_rational)
                .collect::<Result<_, _>>()?,
        ))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q_int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_of_shared_root() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 6])), p(&[0, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-2, 0, 1])), UniPoly::one());
    }

    #[test]
    fn compose_binomial() {
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn eval_real_subfield_polynomial_at_zero() {
        let f = p(&[2, 0, -16, 0, 20, 0, -8, 0, 1]);
        assert_eq!(f.eval(&q_int(0)), q_int(2));
        assert_eq!(f.degree(), 8);
    }

    #[test]
    fn divrem_and_errors() {
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1, 2]).divrem(&UniPoly::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[-2, 0, 1]);
        let b = p(&[3, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), UniPoly::one());
    }

    #[test]
    fn real_roots_by_sturm() {
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(p(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(p(&[2, 0, -16, 0, 20, 0, -8, 0, 1]).count_real_roots(), 8);
        assert_eq!(p(&[1, 0, 2, 0, 1]).count_real_roots(), 0);
        assert_eq!(p(&[0, 0, 1]).count_real_roots(), 1);
    }

    #[test]
    fn display_and_parse() {
        let f = p(&[2, 0, -16, 0, 20, 0, -8, 0, 1]);
        assert_eq!(f.to_string(), "x^8 - 8*x^6 + 20*x^4 - 16*x^2 + 2");
        assert_eq!(UniPoly::parse("2,0,-16,0,20,0,-8,0,1").unwrap(), f);
        assert_eq!(UniPoly::parse("[2,0,-16,0,20,0,-8,0,1]").unwrap(), f);
        assert_eq!(UniPoly::parse("1/2, 1").unwrap().coeff(0), Q::new(1.into(), 2.into()));
        assert!(UniPoly::parse("1,,2").is_err());
        assert_eq!(UniPoly::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let f = UniPoly::new(vec![Q::new(1.into(), 2.into()), Q::new((-3).into(), 4.into())]);
        let (c, prim) = f.primitive_part();
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(UniPoly::from_bigints(&prim).scale(&c), f);
    }
}

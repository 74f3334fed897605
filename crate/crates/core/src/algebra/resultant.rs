//! Resultants and discriminants by the subresultant pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::Q;
use super::AlgebraError;

type ZPoly = Vec<BigInt>;

fn deg(p: &ZPoly) -> usize {
    p.len() - 1
}

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed in Z[x].
fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = deg(a) + 1 - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r = trim(r);
        steps -= 1;
    }
    // Any unused multiplications keep the identity exact.
    let f = num_traits::pow(lb, steps);
    r.into_iter().map(|c| c * &f).collect()
}

fn int_pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant of two integer polynomials (Collins' subresultant algorithm).
fn resultant_z(a: ZPoly, b: ZPoly) -> BigInt {
    let (mut a, mut b) = (a, b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return sign * int_pow(&b[0], deg(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = int_pow(&ca, deg(&b)) * int_pow(&cb, deg(&a));
    a = a.into_iter().map(|c| c / &ca).collect();
    b = b.into_iter().map(|c| c / &cb).collect();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = trim(prem(&a, &b));
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * int_pow(&h, delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a[deg(&a)].clone();
        // h <- g^delta / h^(delta - 1), exact.
        h = if delta == 0 {
            h
        } else {
            int_pow(&g, delta) / int_pow(&h, delta - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let h_final = if da == 0 {
                h
            } else {
                int_pow(&b[0], da) / int_pow(&h, da - 1)
            };
            return sign * t * h_final;
        }
    }
}

/// Exact resultant of two nonzero rational polynomials.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Q, AlgebraError> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    let (ca, pa) = a.primitive_part();
    let (cb, pb) = b.primitive_part();
    let scale = num_traits::pow(ca, b.degree() as usize) * num_traits::pow(cb, a.degree() as usize);
    Ok(Q::from_integer(resultant_z(pa, pb)) * scale)
}

/// `disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<Q, AlgebraError> {
    let n = f.degree();
    if n < 1 {
        return Err(AlgebraError::DegreeTooSmall);
    }
    if n == 1 {
        return Ok(Q::one());
    }
    let r = resultant(f, &f.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { Q::one() } else { -Q::one() };
    Ok(sign * r / f.lc())
}

/// Integer discriminant of an integral polynomial.
pub fn discriminant_int(f: &UniPoly) -> Result<BigInt, AlgebraError> {
    let d = discriminant(f)?;
    if !d.is_integer() {
        return Err(AlgebraError::NotIntegral);
    }
    Ok(d.to_integer())
}

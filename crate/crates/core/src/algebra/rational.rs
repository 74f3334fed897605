//! Integer and rational helpers shared by every module: parsing, the JSON
//! coefficient encoding, primality, and squarefree parts.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::AlgebraError;

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Q, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"` form, or `"p"` for integers.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, AlgebraError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| AlgebraError::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("not an integer: {s:?}"))),
        other => Err(AlgebraError::Parse(format!("not an integer: {other}"))),
    }
}

/// Coefficient encoding shared by all polynomial JSON: an integer (a JSON
/// number, or a decimal string when it does not fit in 64 bits), or a
/// `[numerator, denominator]` pair for non-integers.
pub fn rational_to_json(q: &Q) -> Value {
    if q.is_integer() {
        int_to_json(q.numer())
    } else {
        Value::Array(vec![int_to_json(q.numer()), int_to_json(q.denom())])
    }
}

pub fn rational_from_json(v: &Value) -> Result<Q, AlgebraError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let n = int_from_json(&pair[0])?;
            let d = int_from_json(&pair[1])?;
            if d.is_zero() {
                return Err(AlgebraError::Parse("zero denominator".into()));
            }
            Ok(Q::new(n, d))
        }
        Value::String(s) if s.contains('/') => parse_rational(s),
        other => Ok(Q::from_integer(int_from_json(other)?)),
    }
}

/// Deterministic primality test for 64-bit integers (Miller-Rabin with the
/// first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    if n.is_zero() {
        return 0;
    }
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Signed squarefree part: the unique squarefree `d` with `n = d * m^2`.
///
/// Trial division runs up to the cube root of `|n|`; what remains has at most
/// two prime factors, so it is either a square or squarefree.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let sign = n.sign();
    let mut m = n.abs();
    let mut out = BigInt::one();
    let limit = m.cbrt() + BigInt::one();
    let mut p = BigInt::from(2u32);
    while p <= limit && p.clone() * &p <= m {
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if exact_sqrt(&m).is_none() {
        out *= m;
    }
    if sign == Sign::Minus {
        -out
    } else {
        out
    }
}

/// Divisors of a small positive integer, ascending.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n_rem = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n_rem {
        if n_rem.is_multiple_of(p) {
            while n_rem.is_multiple_of(p) {
                n_rem /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n_rem > 1 {
        out -= out / n_rem;
    }
    out
}

/// Distinct prime factors of a small integer.
pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least primitive root modulo a prime.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors_u64(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod_u64(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

//! Certificates of irreducibility over the rationals.
//!
//! No factorizer over Q is involved: a verdict is backed either by a prime
//! whose reduction is irreducible, by the degree sieve (the intersection over
//! several primes of the achievable factor-degree sums), by an Eisenstein
//! criterion after an integer shift, or by identity with a cyclotomic
//! polynomial. A reducibility verdict always carries an explicit rational root.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::reduce_mod_p;
use super::finite::PrimeField;
use super::finpoly::FinPolyRing;
use super::poly::UniPoly;
use super::rational::{format_rational, primes_up_to, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Degree one.
    Linear,
    /// The reduction modulo `prime` is squarefree and irreducible.
    IrreducibleModPrime { prime: u64 },
    /// Degree sets of the reductions at `primes` share only `0` and `n`.
    DegreeSieve { primes: Vec<u64>, surviving: Vec<usize> },
    /// `f(x + shift)` is Eisenstein at `prime`.
    Eisenstein { prime: u64, shift: i64 },
    /// `f` equals the `n`-th cyclotomic polynomial.
    Cyclotomic { conductor: u64 },
    /// `f` is the minimal polynomial of `element` (power-basis coordinates)
    /// in the field defined by `ambient`, itself certified irreducible.
    Subfield { ambient: UniPoly, ambient_certificate: Box<IrreducibilityCertificate>, element: Vec<Q> },
    /// `f` is the characteristic polynomial of `theta1 + shift * theta2` on
    /// `Q[x]/(left) (x) Q[y]/(right)`, the two factors being certified
    /// irreducible of coprime degrees.
    CoprimeCompositum {
        left: UniPoly,
        left_certificate: Box<IrreducibilityCertificate>,
        right: UniPoly,
        right_certificate: Box<IrreducibilityCertificate>,
        shift: i64,
    },
    /// `f(root) = 0`; `factor` is the corresponding linear factor.
    RationalRoot { root: Q, factor: UniPoly },
    /// Nothing proven after `primes`; `surviving` is the sieve's remainder.
    Exhausted { primes: Vec<u64>, surviving: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl fmt::Display for IrreducibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Witness::Linear => write!(f, "irreducible (linear)"),
            Witness::IrreducibleModPrime { prime } => {
                write!(f, "irreducible (reduction mod {prime} is irreducible)")
            }
            Witness::DegreeSieve { primes, .. } => {
                write!(f, "irreducible (degree sieve over primes {primes:?})")
            }
            Witness::Eisenstein { prime, shift } => {
                write!(f, "irreducible (Eisenstein at {prime} after x -> x + {shift})")
            }
            Witness::Cyclotomic { conductor } => {
                write!(f, "irreducible (cyclotomic polynomial of conductor {conductor})")
            }
            Witness::Subfield { ambient, .. } => {
                write!(f, "irreducible (minimal polynomial of an element of Q[x]/({ambient}))")
            }
            Witness::CoprimeCompositum { left, right, .. } => {
                write!(f, "irreducible (compositum of Q[x]/({left}) and Q[x]/({right}), coprime degrees)")
            }
            Witness::RationalRoot { root, factor } => {
                write!(f, "reducible (rational root {}, factor {factor})", format_rational(root))
            }
            Witness::Exhausted { primes, surviving } => write!(
                f,
                "inconclusive after {} primes (surviving degrees {surviving:?})",
                primes.len()
            ),
        }
    }
}

impl IrreducibilityCertificate {
    fn irreducible(witness: Witness) -> Self {
        Self { verdict: Verdict::Irreducible, witness }
    }

    /// Certificate for a cyclotomic polynomial; `None` unless `f` is exactly
    /// the cyclotomic polynomial of the given conductor.
    pub fn cyclotomic(f: &UniPoly, conductor: u64) -> Option<Self> {
        (crate::cyclotomic::cyclotomic_poly(conductor) == *f)
            .then(|| Self::irreducible(Witness::Cyclotomic { conductor }))
    }

    /// Certificate for the minimal polynomial of `element` in `Q[x]/(ambient)`.
    /// `None` unless `f` is that minimal polynomial and the ambient
    /// certificate checks.
    pub fn subfield(f: &UniPoly, ambient: &UniPoly, ambient_certificate: &Self, element: Vec<Q>) -> Option<Self> {
        let cert = Self::irreducible(Witness::Subfield {
            ambient: ambient.clone(),
            ambient_certificate: Box::new(ambient_certificate.clone()),
            element,
        });
        cert.check(f).then_some(cert)
    }

    /// Certificate for the generator `theta1 + shift * theta2` of a compositum
    /// of two fields of coprime degree. `None` unless the witness checks.
    pub fn coprime_compositum(
        f: &UniPoly,
        left: (&UniPoly, &Self),
        right: (&UniPoly, &Self),
        shift: i64,
    ) -> Option<Self> {
        let cert = Self::irreducible(Witness::CoprimeCompositum {
            left: left.0.clone(),
            left_certificate: Box::new(left.1.clone()),
            right: right.0.clone(),
            right_certificate: Box::new(right.1.clone()),
            shift,
        });
        cert.check(f).then_some(cert)
    }

    /// Re-checks the witness against `f` from scratch.
    pub fn check(&self, f: &UniPoly) -> bool {
        let Some(ints) = primitive_integral(f) else {
            return false;
        };
        let n = f.degree() as usize;
        match (&self.verdict, &self.witness) {
            (Verdict::Irreducible, Witness::Linear) => n == 1,
            (Verdict::Irreducible, Witness::IrreducibleModPrime { prime }) => {
                reduction_degrees(&ints, *prime) == Some(vec![n])
            }
            (Verdict::Irreducible, Witness::DegreeSieve { primes, surviving }) => {
                let mut acc: Option<BTreeSet<usize>> = None;
                for &p in primes {
                    let Some(degs) = reduction_degrees(&ints, p) else {
                        return false;
                    };
                    let sums = subset_sums(&degs);
                    acc = Some(match acc {
                        None => sums,
                        Some(a) => a.intersection(&sums).copied().collect(),
                    });
                }
                let expected: BTreeSet<usize> = [0, n].into();
                acc == Some(expected.clone()) && surviving.iter().copied().collect::<BTreeSet<_>>() == expected
            }
            (Verdict::Irreducible, Witness::Eisenstein { prime, shift }) => {
                let shifted = f.compose(&UniPoly::from_ints(&[*shift, 1]));
                shifted
                    .integer_coeffs()
                    .is_some_and(|c| is_eisenstein_coeffs(&c, *prime))
            }
            (Verdict::Irreducible, Witness::Cyclotomic { conductor }) => {
                crate::cyclotomic::cyclotomic_poly(*conductor) == *f
            }
            (Verdict::Irreducible, Witness::Subfield { ambient, ambient_certificate, element }) => {
                ambient_certificate.verdict == Verdict::Irreducible
                    && ambient_certificate.check(ambient)
                    && element.len() == ambient.degree() as usize
                    && minimal_polynomial_mod(&UniPoly::new(element.clone()), ambient).as_ref() == Some(f)
            }
            (
                Verdict::Irreducible,
                Witness::CoprimeCompositum { left, left_certificate, right, right_certificate, shift },
            ) => {
                let (n1, n2) = (left.degree(), right.degree());
                n1 >= 1
                    && n2 >= 1
                    && num_integer::gcd(n1, n2) == 1
                    && n == (n1 * n2) as usize
                    && f.is_monic()
                    && left.is_monic()
                    && right.is_monic()
                    && left_certificate.verdict == Verdict::Irreducible
                    && left_certificate.check(left)
                    && right_certificate.verdict == Verdict::Irreducible
                    && right_certificate.check(right)
                    && is_tensor_charpoly(f, left, right, *shift)
            }
            (Verdict::Reducible, Witness::RationalRoot { root, factor }) => {
                n >= 2 && f.eval(root).is_zero() && factor.eval(root).is_zero() && factor.degree() == 1
            }
            (Verdict::Inconclusive, Witness::Exhausted { .. }) => true,
            _ => false,
        }
    }
}

/// Minimal polynomial of `a` modulo `m`, read off the first linear
/// dependency among its powers.
fn minimal_polynomial_mod(a: &UniPoly, m: &UniPoly) -> Option<UniPoly> {
    let n = m.degree();
    if n < 1 {
        return None;
    }
    let coords = |p: &UniPoly| -> Vec<Q> { (0..n as usize).map(|i| p.coeff(i)).collect() };
    let mut basis = super::linalg::IncrementalBasis::new();
    let mut power = UniPoly::one();
    loop {
        if let Some(dep) = basis.insert(coords(&power)) {
            return Some(UniPoly::new(dep));
        }
        power = (&power * a).rem(m).ok()?;
    }
}

/// Whether `f(x) = (-1)^(n1 n2) Res_y(left(x - shift*y), right(y))`, checked
/// at `deg f + 1` integer points; both sides have degree `n1 n2`.
fn is_tensor_charpoly(f: &UniPoly, left: &UniPoly, right: &UniPoly, shift: i64) -> bool {
    let sign = if (left.degree() * right.degree()) % 2 == 0 { Q::one() } else { -Q::one() };
    (0..=f.degree()).all(|x0| {
        let inner = UniPoly::from_ints(&[x0 as i64, -shift]);
        match super::resultant::resultant(&left.compose(&inner), right) {
            Ok(r) => f.eval(&Q::from_integer(BigInt::from(x0 as i64))) == &sign * r,
            Err(_) => false,
        }
    })
}

fn primitive_integral(f: &UniPoly) -> Option<Vec<BigInt>> {
    if f.degree() < 1 {
        return None;
    }
    Some(f.primitive_part().1)
}

/// Factor degrees of `f mod p`, or `None` when `p` divides the leading
/// coefficient or the reduction is not squarefree.
fn reduction_degrees(ints: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let field = PrimeField::new(p).ok()?;
    if ints.last()?.mod_floor(&BigInt::from(p)).is_zero() {
        return None;
    }
    let reduced = reduce_mod_p(&UniPoly::from_bigints(ints), &field).ok()?;
    let ring = FinPolyRing::new(field);
    if !ring.is_squarefree(&reduced) {
        return None;
    }
    ring.factor_degrees(&reduced).ok()
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

pub(crate) fn is_eisenstein_coeffs(c: &[BigInt], p: u64) -> bool {
    let n = c.len();
    if n < 2 {
        return false;
    }
    let p = BigInt::from(p);
    let divisible = |a: &BigInt| a.mod_floor(&p).is_zero();
    !divisible(&c[n - 1])
        && c[..n - 1].iter().all(divisible)
        && !c[0].mod_floor(&(&p * &p)).is_zero()
}

/// Candidate rational roots `num/den` with `num | a_0`, `den | lc`, both
/// bounded by `limit` in absolute value.
fn find_rational_root(ints: &[BigInt], limit: u64) -> Option<Q> {
    let f = UniPoly::from_bigints(ints);
    if ints[0].is_zero() {
        return Some(Q::zero());
    }
    let small_divisors = |n: &BigInt| -> Vec<u64> {
        let n = n.abs();
        (1..=limit).filter(|d| n.is_multiple_of(&BigInt::from(*d))).collect()
    };
    let nums = small_divisors(&ints[0]);
    let dens = small_divisors(ints.last().unwrap());
    for &d in &dens {
        for &a in &nums {
            if a.gcd(&d) != 1 {
                continue;
            }
            for s in [1i64, -1] {
                let r = Q::new(BigInt::from(a as i64 * s), BigInt::from(d));
                if f.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn small_prime_factors(n: &BigInt, limit: u64) -> Vec<u64> {
    primes_up_to(limit)
        .into_iter()
        .filter(|&p| n.is_multiple_of(&BigInt::from(p)))
        .collect()
}

/// Certifies irreducibility of `f` over Q using at most `prime_budget`
/// primes of good reduction.
pub fn certify_irreducible_over_q(f: &UniPoly, prime_budget: usize) -> IrreducibilityCertificate {
    let Some(ints) = primitive_integral(f) else {
        return IrreducibilityCertificate {
            verdict: Verdict::Inconclusive,
            witness: Witness::Exhausted { primes: Vec::new(), surviving: Vec::new() },
        };
    };
    let n = ints.len() - 1;
    if n == 1 {
        return IrreducibilityCertificate::irreducible(Witness::Linear);
    }
    if let Some(root) = find_rational_root(&ints, 1000) {
        let factor = UniPoly::new(vec![-root.clone(), Q::one()]);
        return IrreducibilityCertificate {
            verdict: Verdict::Reducible,
            witness: Witness::RationalRoot { root, factor },
        };
    }
    let fz = UniPoly::from_bigints(&ints);
    for shift in [0i64, 1, -1] {
        let shifted = fz.compose(&UniPoly::from_ints(&[shift, 1]));
        let c = shifted.integer_coeffs().expect("integral");
        let g = c[..n].iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        if g.is_zero() || g.is_one() {
            continue;
        }
        for p in small_prime_factors(&g, 1000) {
            if is_eisenstein_coeffs(&c, p) {
                return IrreducibilityCertificate::irreducible(Witness::Eisenstein { prime: p, shift });
            }
        }
    }
    let mut used = Vec::new();
    let mut surviving: Option<BTreeSet<usize>> = None;
    let target: BTreeSet<usize> = [0, n].into();
    let mut p = 1u64;
    while used.len() < prime_budget {
        p += 1;
        if !crate::algebra::rational::is_prime_u64(p) {
            continue;
        }
        let Some(degs) = reduction_degrees(&ints, p) else {
            continue;
        };
        if degs == [n] {
            return IrreducibilityCertificate::irreducible(Witness::IrreducibleModPrime { prime: p });
        }
        used.push(p);
        let sums = subset_sums(&degs);
        let next: BTreeSet<usize> = match surviving {
            None => sums,
            Some(s) => s.intersection(&sums).copied().collect(),
        };
        if next == target {
            return IrreducibilityCertificate::irreducible(Witness::DegreeSieve {
                primes: used,
                surviving: next.into_iter().collect(),
            });
        }
        surviving = Some(next);
    }
    IrreducibilityCertificate {
        verdict: Verdict::Inconclusive,
        witness: Witness::Exhausted {
            primes: used,
            surviving: surviving.unwrap_or_default().into_iter().collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q_int;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn root_two_is_irreducible() {
        let f = p(&[-2, 0, 1]);
        let cert = certify_irreducible_over_q(&f, 50);
        assert_eq!(cert.verdict, Verdict::Irreducible);
        // x^2 - 2 is 2-Eisenstein, which is found before any prime scan.
        assert_eq!(cert.witness, Witness::Eisenstein { prime: 2, shift: 0 });
        assert!(cert.check(&f));
        // Independently, the reduction mod 3 is irreducible (2 is not a square mod 3).
        assert_eq!(reduction_degrees(&f.primitive_part().1, 3), Some(vec![2]));
    }

    #[test]
    fn difference_of_squares_is_reducible() {
        let f = p(&[-1, 0, 1]);
        let cert = certify_irreducible_over_q(&f, 50);
        assert_eq!(cert.verdict, Verdict::Reducible);
        match &cert.witness {
            Witness::RationalRoot { root, factor } => {
                assert_eq!(*root, q_int(1));
                assert_eq!(*factor, p(&[-1, 1]));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(cert.check(&f));
    }

    #[test]
    fn sieve_proves_when_no_prime_witness_exists() {
        // x^4 + 1 is irreducible but reducible modulo every prime; the degree
        // sieve cannot help either (all reductions split as 2 + 2 or finer),
        // and it is Eisenstein only after the shift x -> x + 1.
        let f = p(&[1, 0, 0, 0, 1]);
        let cert = certify_irreducible_over_q(&f, 40);
        assert_eq!(cert.witness, Witness::Eisenstein { prime: 2, shift: 1 });
        // A product of a cubic and a linear-free quadratic has degree sets
        // containing 2 or 3 at every prime, so the sieve must never fire.
        let g = &p(&[-2, 0, 0, 1]) * &p(&[3, 0, 1]);
        let cert = certify_irreducible_over_q(&g, 30);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn sieve_fires_for_a_regular_s3_sextic() {
        // Minimal polynomial of 2^(1/3) + sqrt(-3): its Galois group is S3
        // acting regularly, so no reduction is irreducible (no 6-cycles) but
        // the patterns 2+2+2 and 3+3 together leave only {0, 6}.
        let f = p(&[31, 36, 27, -4, 9, 0, 1]);
        let cert = certify_irreducible_over_q(&f, 50);
        assert_eq!(cert.verdict, Verdict::Irreducible);
        assert!(matches!(cert.witness, Witness::DegreeSieve { .. }), "{cert}");
        assert!(cert.check(&f));
        // x^4 - 10x^2 + 1 (Klein four-group) survives with {0, 2, 4}.
        let g = p(&[1, 0, -10, 0, 1]);
        let cert = certify_irreducible_over_q(&g, 30);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.witness, Witness::Exhausted { primes: match &cert.witness {
            Witness::Exhausted { primes, .. } => primes.clone(),
            _ => unreachable!(),
        }, surviving: vec![0, 2, 4] });
    }

    #[test]
    fn forged_witnesses_fail_check() {
        let f = p(&[-1, 0, 1]);
        let forged = IrreducibilityCertificate {
            verdict: Verdict::Irreducible,
            witness: Witness::IrreducibleModPrime { prime: 3 },
        };
        assert!(!forged.check(&f));
        let forged = IrreducibilityCertificate {
            verdict: Verdict::Irreducible,
            witness: Witness::Cyclotomic { conductor: 4 },
        };
        assert!(!forged.check(&f));
    }

    fn linear_factors() -> impl Strategy<Value = UniPoly> {
        (
            prop::collection::vec((-20i64..=20, 1i64..=6), 1..4),
            prop::collection::vec(-9i64..=9, 1..5),
        )
            .prop_map(|(roots, extra)| {
                let mut f = UniPoly::from_ints(&extra);
                if f.is_zero() {
                    f = UniPoly::one();
                }
                for (a, b) in roots {
                    f = &f * &UniPoly::from_ints(&[-a, b]);
                }
                f
            })
    }

    proptest! {
        #[test]
        fn never_irreducible_with_rational_root(f in linear_factors()) {
            prop_assume!(f.degree() >= 2);
            let cert = certify_irreducible_over_q(&f, 20);
            prop_assert_ne!(cert.verdict, Verdict::Irreducible);
            prop_assert!(cert.check(&f));
        }
    }
}

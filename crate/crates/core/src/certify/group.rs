//! Permutation groups on `{0, ..., n-1}` and their cycle-type tables.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::CertifyError;
use crate::algebra::rational::{gcd_u64, is_prime_u64, primitive_root};

/// Largest group that is enumerated element by element.
pub const ORDER_CAP: usize = 100_000;

/// Largest prime accepted by [`GroupModel::frobenius`]. `F317` has 100172
/// elements, just over [`ORDER_CAP`]; affine groups get their own cap.
pub const MAX_FROBENIUS_PRIME: u64 = 317;

/// Permutation as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Self {
        Perm((0..n as u32).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn pow(&self, k: usize) -> Perm {
        (0..k).fold(Perm::identity(self.degree()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        self.cycle_type().0.iter().fold(1, |acc, &c| acc / gcd_usize(acc, c) * c)
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    gcd_u64(a as u64, b as u64) as usize
}

/// Partition of `n`, parts in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parity of a permutation of this type.
    pub fn is_even(&self) -> bool {
        self.0.iter().map(|&c| c - 1).sum::<usize>() % 2 == 0
    }

    /// Parses `"(1,2^8)"`, `"16,1"` or `"17"`.
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            let (base, exp): (usize, usize) = match tok.split_once('^') {
                Some((b, e)) => (b.trim().parse().ok()?, e.trim().parse().ok()?),
                None => (tok.parse().ok()?, 1usize),
            };
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Some(CycleType::new(parts))
    }

    /// Number of permutations of this type in the symmetric group.
    pub fn class_size_in_symmetric(&self) -> BigUint {
        let n = self.degree();
        let mut size: BigUint = (1..=n).map(BigUint::from).product();
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &self.0 {
            *mult.entry(c).or_default() += 1;
        }
        for (c, m) in mult {
            size /= BigUint::from(c).pow(m as u32);
            size /= (1..=m).map(BigUint::from).product::<BigUint>();
        }
        size
    }
}

/// Ascending parts with exponents, e.g. `(1,2^8)`.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &c in self.0.iter().rev() {
            match runs.last_mut() {
                Some((b, m)) if *b == c => *m += 1,
                _ => runs.push((c, 1)),
            }
        }
        let body: Vec<String> =
            runs.iter().map(|&(b, m)| if m == 1 { b.to_string() } else { format!("{b}^{m}") }).collect();
        write!(f, "({})", body.join(","))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A permutation group with its cycle-type table. Small groups carry their
/// full element list; symmetric groups use the class-size formula.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    elements: Option<Vec<Perm>>,
    order: BigUint,
    types: BTreeMap<CycleType, BigUint>,
}

impl GroupModel {
    /// Closure of `generators`, enumerated breadth first.
    pub fn generate(name: &str, degree: usize, generators: Vec<Perm>) -> Result<Self, CertifyError> {
        Self::generate_capped(name, degree, generators, ORDER_CAP)
    }

    fn generate_capped(name: &str, degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self, CertifyError> {
        let elements = closure(degree, &generators, cap)?;
        let mut types: BTreeMap<CycleType, BigUint> = BTreeMap::new();
        for g in &elements {
            *types.entry(g.cycle_type()).or_default() += 1u32;
        }
        Ok(Self {
            name: name.to_string(),
            degree,
            generators,
            order: BigUint::from(elements.len()),
            elements: Some(elements),
            types,
        })
    }

    /// Affine group `x -> a x + b` on `Z/p`, generated by `x -> x + 1` and
    /// `x -> g x` for the least primitive root `g`.
    pub fn frobenius(p: u64) -> Result<Self, CertifyError> {
        if !is_prime_u64(p) {
            return Err(CertifyError::NotPrime(p));
        }
        if p > MAX_FROBENIUS_PRIME {
            return Err(CertifyError::OrderCapExceeded(ORDER_CAP));
        }
        let g = primitive_root(p);
        let order = (p * (p - 1)) as usize;
        Self::generate_capped(&format!("F{p}"), p as usize, vec![translation(p), multiplier(p, g)], order.max(ORDER_CAP))
    }

    /// Dihedral group `<x -> x + 1, x -> -x>` on `Z/n`.
    pub fn dihedral(n: u64) -> Result<Self, CertifyError> {
        Self::generate(&format!("D{n}"), n as usize, vec![translation(n), multiplier(n, n - 1)])
    }

    pub fn cyclic(n: usize) -> Result<Self, CertifyError> {
        Self::generate(&format!("C{n}"), n, vec![translation(n as u64)])
    }

    pub fn trivial(n: usize) -> Self {
        Self::generate(&format!("1 on {n} points"), n, vec![]).expect("trivial group")
    }

    /// Full symmetric group; types from the class-size formula.
    pub fn symmetric(n: usize) -> Self {
        let types: BTreeMap<CycleType, BigUint> = partitions(n)
            .into_iter()
            .map(|p| {
                let t = CycleType::new(p);
                let size = t.class_size_in_symmetric();
                (t, size)
            })
            .collect();
        let mut generators = Vec::new();
        if n > 1 {
            generators.push(translation(n as u64));
            generators.push(Perm::from_fn(n, |i| match i {
                0 => 1,
                1 => 0,
                _ => i,
            }));
        }
        Self {
            name: format!("S{n}"),
            degree: n,
            generators,
            elements: None,
            order: (1..=n).map(BigUint::from).product(),
            types,
        }
    }

    /// Parses `frobenius:p`, `dihedral:n`, `cyclic:n` or `symmetric:n`.
    pub fn from_spec(spec: &str) -> Result<Self, CertifyError> {
        let bad = || CertifyError::BadGroupSpec(spec.to_string());
        let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
        let n: u64 = arg.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match kind.trim() {
            "frobenius" => Self::frobenius(n),
            "dihedral" => Self::dihedral(n),
            "cyclic" => Self::cyclic(n as usize),
            "symmetric" => Ok(Self::symmetric(n as usize)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_f64(&self) -> f64 {
        self.order.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Enumerated elements, when the group is small enough to list.
    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    /// Exact number of elements of each cycle type.
    pub fn cycle_types(&self) -> &BTreeMap<CycleType, BigUint> {
        &self.types
    }

    /// Chebotarev density of each cycle type.
    pub fn densities(&self) -> BTreeMap<CycleType, f64> {
        let order = self.order_f64();
        self.types
            .iter()
            .map(|(t, c)| (t.clone(), c.to_f64().unwrap_or(f64::INFINITY) / order))
            .collect()
    }

    pub fn contains_type(&self, t: &CycleType) -> bool {
        self.types.contains_key(t)
    }
}

fn translation(n: u64) -> Perm {
    Perm::from_fn(n as usize, |i| ((i as u64 + 1) % n) as u32)
}

fn multiplier(n: u64, g: u64) -> Perm {
    Perm::from_fn(n as usize, |i| (i as u64 * g % n) as u32)
}

fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>, CertifyError> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h = g.compose(&elements[i]);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(CertifyError::OrderCapExceeded(cap));
                }
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok(elements)
}

/// All partitions of `n`, parts descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Order of the closure of `D17` together with `x -> m x`.
pub fn closure_order_with_multiplier(m: u64) -> Result<usize, CertifyError> {
    let d17 = GroupModel::dihedral(17)?;
    let mut gens = d17.generators.clone();
    gens.push(multiplier(17, m));
    Ok(closure(17, &gens, ORDER_CAP)?.len())
}

/// Whether adjoining the order-8 multiplier `x -> g^2 x` (`g` the least
/// primitive root) to `D17` gives all of `F17`.
///
/// It does not: `-1 = g^8` is a power of `g^2`, so the multipliers in the
/// closure are the eight squares and the closure has order 136. Use
/// [`quotient_generator_check`] for the extension that does close.
pub fn subgroup_closure_check() -> bool {
    let g = primitive_root(17);
    closes_to_f17(g * g % 17)
}

/// Whether `D17` together with `x -> g x`, whose image generates the cyclic
/// quotient `F17 / D17` of order 8, gives all of `F17`.
pub fn quotient_generator_check() -> bool {
    closes_to_f17(primitive_root(17))
}

fn closes_to_f17(m: u64) -> bool {
    let d17 = GroupModel::dihedral(17).expect("small group");
    let mut gens = d17.generators.clone();
    gens.push(multiplier(17, m));
    let Ok(closed) = closure(17, &gens, ORDER_CAP) else {
        return false;
    };
    let f17 = GroupModel::frobenius(17).expect("small group");
    let a: HashSet<&Perm> = closed.iter().collect();
    let b: HashSet<&Perm> = f17.elements().expect("enumerated").iter().collect();
    closed.len() == 272 && a == b
}

/// Whether the multiplier `x -> m x` on `Z/p` has the given order.
pub fn multiplier_order(m: u64, p: u64) -> usize {
    multiplier(p, m).order()
}

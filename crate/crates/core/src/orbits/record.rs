//! Eigensystem records, the Galois setup on the base field, inner
//! conjugation and exterior twists.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::OrbitError;
use crate::ideals::{dedekind_factor, FactoredPrime};
use crate::number_field::{AutGroup, NFAutomorphism, NFElement, NumberField};

/// Orders prime labels `"p.i"` numerically by `(p, i)`.
pub fn compare_labels(a: &str, b: &str) -> Ordering {
    let key = |s: &str| -> (u64, u64, String) {
        match s.split_once('.') {
            Some((p, i)) => (p.parse().unwrap_or(u64::MAX), i.parse().unwrap_or(u64::MAX), s.to_string()),
            None => (u64::MAX, u64::MAX, s.to_string()),
        }
    };
    key(a).cmp(&key(b))
}

/// The base field `F`, the group `G` of its automorphisms generated by the
/// given maps, and the action of `G` on the primes above the supported
/// rational primes.
#[derive(Clone, Debug)]
pub struct GaloisSetup {
    pub base_field: NumberField,
    pub generators: Vec<NFAutomorphism>,
    pub group: AutGroup,
    pub supported_primes: Vec<u64>,
    pub prime_tables: BTreeMap<u64, FactoredPrime>,
    words: Vec<String>,
    // prime_action[g][label] = label of g(P)
    prime_action: Vec<BTreeMap<String, String>>,
}

impl GaloisSetup {
    pub fn new(
        base_field: NumberField,
        generators: Vec<NFAutomorphism>,
        supported_primes: &[u64],
    ) -> Result<Self, OrbitError> {
        let group = AutGroup::generate(&base_field, &generators)?;
        let mut prime_tables = BTreeMap::new();
        for &p in supported_primes {
            prime_tables.insert(p, dedekind_factor(&base_field, p)?);
        }
        let mut prime_action = Vec::with_capacity(group.order());
        for a in group.elements() {
            let mut map = BTreeMap::new();
            for fp in prime_tables.values() {
                let perm = fp.permutation(a)?;
                for (i, q) in fp.factors.iter().enumerate() {
                    map.insert(q.label.clone(), fp.factors[perm[i]].label.clone());
                }
            }
            prime_action.push(map);
        }
        let words = element_words(&group, &generators);
        let mut sorted = supported_primes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Self { base_field, generators, group, supported_primes: sorted, prime_tables, words, prime_action })
    }

    /// Name of the generator with index `i`: `sigma` when there is only one.
    pub fn generator_name(&self, i: usize) -> String {
        generator_name(self.generators.len(), i)
    }

    /// Shortest word for group element `g`, e.g. `sigma^2`, or `1`.
    pub fn word(&self, g: usize) -> &str {
        &self.words[g]
    }

    /// Parses a word such as `sigma^2`, `sigma1*sigma2^3` or `1` into a group
    /// element index. Factors compose right to left, as maps.
    pub fn parse_word(&self, word: &str) -> Result<usize, OrbitError> {
        let bad = || OrbitError::Schema(format!("bad group word {word:?}"));
        let mut acc = 0usize;
        for tok in word.split('*').map(str::trim) {
            if tok == "1" || tok == "id" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let gi = (0..self.generators.len()).find(|&i| self.generator_name(i) == name).ok_or_else(bad)?;
            let g = self.group.index_of(&self.generators[gi]).expect("generator lies in the group");
            for _ in 0..exp {
                acc = self.group.mul(acc, g);
            }
        }
        Ok(acc)
    }

    /// Label of `g(P)`.
    pub fn act(&self, g: usize, label: &str) -> Option<&str> {
        self.prime_action[g].get(label).map(String::as_str)
    }

    /// All prime labels, in numeric order.
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.prime_action[0].keys().cloned().collect();
        v.sort_by(|a, b| compare_labels(a, b));
        v
    }

    /// `(gh)(P) = g(h(P))` for every pair of elements and every prime.
    pub fn action_respects_multiplication(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|g| {
            (0..n).all(|h| {
                let gh = self.group.mul(g, h);
                self.prime_action[0].keys().all(|l| {
                    let lhs = self.act(gh, l);
                    let rhs = self.act(h, l).and_then(|m| self.act(g, m));
                    lhs.is_some() && lhs == rhs
                })
            })
        })
    }
}

fn generator_name(count: usize, i: usize) -> String {
    if count == 1 {
        "sigma".to_string()
    } else {
        format!("sigma{}", i + 1)
    }
}

fn element_words(group: &AutGroup, generators: &[NFAutomorphism]) -> Vec<String> {
    let gens: Vec<usize> = generators.iter().map(|g| group.index_of(g).expect("generator in group")).collect();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, &g) in gens.iter().enumerate() {
            let j = group.mul(g, i);
            if words[j].is_none() {
                let mut w = vec![gi];
                w.extend(words[i].as_ref().expect("visited"));
                words[j] = Some(w);
                queue.push_back(j);
            }
        }
    }
    words
        .into_iter()
        .map(|w| {
            let w = w.expect("every element is reached");
            if w.is_empty() {
                return "1".to_string();
            }
            let mut parts: Vec<(usize, usize)> = Vec::new();
            for g in w {
                match parts.last_mut() {
                    Some((h, e)) if *h == g => *e += 1,
                    _ => parts.push((g, 1)),
                }
            }
            parts
                .into_iter()
                .map(|(g, e)| {
                    let name = generator_name(gens.len(), g);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect()
}

/// Hecke eigenvalues of one newform at the stored primes, with its
/// coefficient field and the automorphisms of that field known to us.
#[derive(Clone, Debug)]
pub struct EigensystemRecord {
    pub label: String,
    pub coeff_field: NumberField,
    pub weight: u32,
    /// Only trivial characters are supported; kept so the format can grow.
    pub trivial_character: bool,
    pub eigenvalues: BTreeMap<String, NFElement>,
    pub atkin_lehner: Option<i8>,
    pub aut_generators: Vec<NFAutomorphism>,
    /// A prime whose eigenvalue generates the coefficient field.
    pub generator_label: String,
    aut_group: Arc<AutGroup>,
}

impl EigensystemRecord {
    pub fn new(
        label: &str,
        coeff_field: NumberField,
        eigenvalues: BTreeMap<String, NFElement>,
        aut_generators: Vec<NFAutomorphism>,
        atkin_lehner: Option<i8>,
    ) -> Result<Self, OrbitError> {
        if eigenvalues.values().any(|a| a.parent() != &coeff_field)
            || aut_generators.iter().any(|t| t.field() != &coeff_field)
        {
            return Err(OrbitError::WrongField(label.to_string()));
        }
        let aut_group = Arc::new(AutGroup::generate(&coeff_field, &aut_generators)?);
        let generator_label = find_generator(&eigenvalues)
            .ok_or_else(|| OrbitError::NoGeneratingEigenvalue(label.to_string()))?;
        Ok(Self {
            label: label.to_string(),
            coeff_field,
            weight: 2,
            trivial_character: true,
            eigenvalues,
            atkin_lehner,
            aut_generators,
            generator_label,
            aut_group,
        })
    }

    fn derived(&self, label: String, eigenvalues: BTreeMap<String, NFElement>, generator_label: String) -> Self {
        Self { label, eigenvalues, generator_label, ..self.clone() }
    }

    /// `[L_f : Q]`.
    pub fn dim(&self) -> usize {
        self.coeff_field.degree()
    }

    /// The group generated by the known automorphisms of the coefficient field.
    pub fn aut_group(&self) -> &AutGroup {
        &self.aut_group
    }

    pub fn eigenvalue(&self, label: &str) -> Option<&NFElement> {
        self.eigenvalues.get(label)
    }

    /// Same coefficient field and the same eigenvalue at every stored prime.
    pub fn same_eigensystem(&self, other: &Self) -> bool {
        self.coeff_field == other.coeff_field && self.eigenvalues == other.eigenvalues
    }
}

fn find_generator(eigenvalues: &BTreeMap<String, NFElement>) -> Option<String> {
    let mut labels: Vec<&String> = eigenvalues.keys().collect();
    labels.sort_by(|a, b| compare_labels(a, b));
    labels
        .into_iter()
        .find(|l| eigenvalues[*l].generates_field())
        .cloned()
}

/// `a_P(^g f) = a_{g(P)}(f)` at every stored prime.
pub fn inner_conjugate(
    r: &EigensystemRecord,
    g: usize,
    setup: &GaloisSetup,
) -> Result<EigensystemRecord, OrbitError> {
    let mut out = BTreeMap::new();
    for label in r.eigenvalues.keys() {
        let img = setup.act(g, label).ok_or_else(|| OrbitError::MissingPrime(label.clone()))?;
        let a = r.eigenvalues.get(img).ok_or_else(|| OrbitError::MissingPrime(img.to_string()))?;
        out.insert(label.clone(), a.clone());
    }
    // The old generating eigenvalue now sits at g^-1 of its label.
    let gen = setup
        .act(setup.group.inverse(g), &r.generator_label)
        .ok_or_else(|| OrbitError::MissingPrime(r.generator_label.clone()))?
        .to_string();
    let name = if g == 0 { r.label.clone() } else { format!("^{}({})", setup.word(g), r.label) };
    Ok(r.derived(name, out, gen))
}

/// `a_P(f^tau) = tau(a_P(f))` at every stored prime.
pub fn exterior_twist(r: &EigensystemRecord, tau: &NFAutomorphism) -> Result<EigensystemRecord, OrbitError> {
    if tau.field() != &r.coeff_field {
        return Err(OrbitError::WrongField(r.label.clone()));
    }
    let out = r.eigenvalues.iter().map(|(l, a)| (l.clone(), tau.apply(a))).collect();
    let name = if tau.is_identity() { r.label.clone() } else { format!("({})^tau", r.label) };
    Ok(r.derived(name, out, r.generator_label.clone()))
}

/// The automorphism `tau` (from the record's known automorphism group) with
/// `s = r^tau`, if any. `tau` is pinned down by the generating eigenvalue
/// and then checked at every stored prime.
pub fn match_up_to_twist(r: &EigensystemRecord, s: &EigensystemRecord) -> Option<NFAutomorphism> {
    if r.coeff_field != s.coeff_field || r.eigenvalues.len() != s.eigenvalues.len() {
        return None;
    }
    if !r.eigenvalues.keys().all(|l| s.eigenvalues.contains_key(l)) {
        return None;
    }
    let a = &r.eigenvalues[&r.generator_label];
    let b = &s.eigenvalues[&r.generator_label];
    let tau = r.aut_group.elements().iter().find(|t| t.apply(a) == *b)?;
    r.eigenvalues
        .iter()
        .all(|(l, x)| tau.apply(x) == s.eigenvalues[l])
        .then(|| tau.clone())
}

/// The twist of `r` whose generating eigenvalue has the lexicographically
/// least coordinates, with the automorphism producing it.
pub fn canonical_twist(r: &EigensystemRecord) -> (EigensystemRecord, NFAutomorphism) {
    let a = &r.eigenvalues[&r.generator_label];
    let best = r
        .aut_group
        .elements()
        .iter()
        .min_by(|s, t| s.apply(a).coords().cmp(t.apply(a).coords()))
        .expect("group has the identity")
        .clone();
    (exterior_twist(r, &best).expect("same field"), best)
}

//! The action of `G` on orbits, stabilizers and the twist homomorphism,
//! constituent-count checks, genus bookkeeping and reduction modulo a prime.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::record::{exterior_twist, inner_conjugate, match_up_to_twist, EigensystemRecord, GaloisSetup};
use super::OrbitError;
use crate::algebra::rational::squarefree_part;
use crate::algebra::{discriminant_int, FiniteField, UniPoly};
use crate::ideals::{residue_reduce, IdealError, PrimeIdeal};
use crate::number_field::{fixed_field, FixedField, NFAutomorphism};

pub const FLAG_MUST_BE_BASE_CHANGE: &str = "MUST_BE_BASE_CHANGE_FROM_INTERMEDIATE";
pub const FLAG_DATA_INCONSISTENT: &str = "DATA_INCONSISTENT";

/// `action[g][i] = j` when `^g r_i = r_j^tau` with `tau = twists[g][i]`.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub labels: Vec<String>,
    pub words: Vec<String>,
    pub action: Vec<Vec<usize>>,
    pub twists: Vec<Vec<NFAutomorphism>>,
}

impl OrbitTable {
    /// Indices of the group elements fixing orbit `i`.
    pub fn stabilizer(&self, i: usize) -> Vec<usize> {
        (0..self.action.len()).filter(|&g| self.action[g][i] == i).collect()
    }

    /// The `G`-orbits of record indices, each sorted, ordered by least member.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.labels.len()];
        let mut out = Vec::new();
        for i in 0..self.labels.len() {
            if seen[i] {
                continue;
            }
            let class: BTreeSet<usize> = self.action.iter().map(|row| row[i]).collect();
            for &j in &class {
                seen[j] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .words
            .iter()
            .zip(&self.action)
            .map(|(w, row)| {
                let images: BTreeMap<&str, &str> =
                    self.labels.iter().zip(row).map(|(l, &j)| (l.as_str(), self.labels[j].as_str())).collect();
                json!({ "element": w, "images": images })
            })
            .collect();
        let partition: Vec<Vec<&str>> = self
            .partition()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels[i].as_str()).collect())
            .collect();
        json!({ "labels": self.labels, "action": rows, "orbits": partition })
    }
}

/// The orbit of `^g r` for every group element and every record.
///
/// Records must lie in distinct orbits. Inner conjugation composes on the
/// right, `^g(^h f) = ^(h g) f`, so the table satisfies
/// `action[gh][i] = action[h][action[g][i]]`; this is checked.
pub fn orbit_action(setup: &GaloisSetup, records: &[EigensystemRecord]) -> Result<OrbitTable, OrbitError> {
    for (i, a) in records.iter().enumerate() {
        for b in &records[i + 1..] {
            if match_up_to_twist(a, b).is_some() {
                return Err(OrbitError::DuplicateOrbit(a.label.clone(), b.label.clone()));
            }
        }
    }
    let n = setup.group.order();
    let rows: Vec<Result<Vec<(usize, NFAutomorphism)>, OrbitError>> = (0..n)
        .into_par_iter()
        .map(|g| {
            records
                .iter()
                .map(|r| {
                    let c = inner_conjugate(r, g, setup)?;
                    records
                        .iter()
                        .enumerate()
                        .find_map(|(j, s)| match_up_to_twist(s, &c).map(|t| (j, t)))
                        .ok_or(OrbitError::OrphanOrbit(c.label))
                })
                .collect()
        })
        .collect();
    let mut action = Vec::with_capacity(n);
    let mut twists = Vec::with_capacity(n);
    for row in rows {
        let (a, t): (Vec<usize>, Vec<NFAutomorphism>) = row?.into_iter().unzip();
        action.push(a);
        twists.push(t);
    }
    for g in 0..n {
        for h in 0..n {
            let gh = setup.group.mul(g, h);
            for i in 0..records.len() {
                if action[gh][i] != action[h][action[g][i]] {
                    return Err(OrbitError::ActionViolation(format!(
                        "{} and {} on {}",
                        setup.word(g),
                        setup.word(h),
                        records[i].label
                    )));
                }
            }
        }
    }
    Ok(OrbitTable {
        labels: records.iter().map(|r| r.label.clone()).collect(),
        words: (0..n).map(|g| setup.word(g).to_string()).collect(),
        action,
        twists,
    })
}

/// What descent predicts for the abelian variety attached to a form.
#[derive(Clone, Debug)]
pub struct Descent {
    /// `E' = F^(G')`.
    pub base: FixedField,
    /// Squarefree `d` with `E' = Q(sqrt d)`, when `E'` is quadratic.
    pub quadratic_radicand: Option<BigInt>,
    /// `[L : Q]`.
    pub dimension: usize,
    /// `K = L^Delta`, the predicted endomorphism algebra.
    pub endomorphism_field: UniPoly,
}

/// Stabilizer of `[f]`, the twist homomorphism on it and its fixed fields.
#[derive(Clone, Debug)]
pub struct PhiReport {
    pub label: String,
    pub stabilizer: Vec<usize>,
    pub stabilizer_words: Vec<String>,
    /// `phi(g)` for every `g` in the stabilizer, in stabilizer order.
    pub images: Vec<NFAutomorphism>,
    pub injective: bool,
    pub delta_order: usize,
    pub fixed_field: FixedField,
    pub descent: Descent,
}

impl PhiReport {
    pub fn fixed_field_poly(&self) -> &UniPoly {
        self.fixed_field.field.defining_poly()
    }

    pub fn to_json(&self) -> Value {
        let images: Vec<Value> = self
            .stabilizer_words
            .iter()
            .zip(&self.images)
            .map(|(w, t)| json!({ "element": w, "tau": t.to_json() }))
            .collect();
        json!({
            "label": self.label,
            "stabilizer": self.stabilizer_words,
            "stabilizer_order": self.stabilizer.len(),
            "images": images,
            "injective": self.injective,
            "delta_order": self.delta_order,
            "fixed_field_poly": self.fixed_field_poly().to_json(),
            "fixed_field_degree": self.fixed_field.degree(),
            "descent": {
                "base_poly": self.descent.base.field.defining_poly().to_json(),
                "base_degree": self.descent.base.degree(),
                "quadratic_radicand": self.descent.quadratic_radicand.as_ref().map(|d| d.to_string()),
                "dimension": self.descent.dimension,
                "endomorphism_field_poly": self.descent.endomorphism_field.to_json(),
            },
        })
    }
}

/// `G' = Stab([f])`, `phi(g)` = the `tau` with `^g f = f^tau`, `Delta`,
/// `K = L^Delta` and `E' = F^(G')`.
///
/// Fails with `HomomorphismViolation` when `phi(gh) != phi(g) phi(h)` for
/// some pair in `G'`.
pub fn phi_analysis(
    setup: &GaloisSetup,
    records: &[EigensystemRecord],
    label: &str,
) -> Result<PhiReport, OrbitError> {
    let r = records.iter().find(|r| r.label == label).ok_or_else(|| OrbitError::UnknownLabel(label.to_string()))?;
    let mut stabilizer = Vec::new();
    let mut images = Vec::new();
    for g in 0..setup.group.order() {
        let c = inner_conjugate(r, g, setup)?;
        if let Some(t) = match_up_to_twist(r, &c) {
            stabilizer.push(g);
            images.push(t);
        }
    }
    let pos: BTreeMap<usize, usize> = stabilizer.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    for (a, &g) in stabilizer.iter().enumerate() {
        for (b, &h) in stabilizer.iter().enumerate() {
            let gh = setup.group.mul(g, h);
            let ok = pos.get(&gh).is_some_and(|&c| images[c] == images[a].compose(&images[b]));
            if !ok {
                return Err(OrbitError::HomomorphismViolation(format!(
                    "{label}: phi({} {}) differs from phi({}) phi({})",
                    setup.word(g),
                    setup.word(h),
                    setup.word(g),
                    setup.word(h)
                )));
            }
        }
    }
    let delta_order = images.iter().collect::<HashSet<_>>().len();
    let k = fixed_field(&r.coeff_field, &images)?;
    let subgroup: Vec<NFAutomorphism> = stabilizer.iter().map(|&g| setup.group.element(g).clone()).collect();
    let base = fixed_field(&setup.base_field, &subgroup)?;
    let quadratic_radicand = if base.degree() == 2 {
        Some(squarefree_part(&discriminant_int(base.field.defining_poly()).map_err(crate::number_field::FieldError::from)?))
    } else {
        None
    };
    Ok(PhiReport {
        label: label.to_string(),
        stabilizer_words: stabilizer.iter().map(|&g| setup.word(g).to_string()).collect(),
        injective: delta_order == stabilizer.len(),
        stabilizer,
        images,
        delta_order,
        descent: Descent {
            base,
            quadratic_radicand,
            dimension: r.dim(),
            endomorphism_field: k.field.defining_poly().clone(),
        },
        fixed_field: k,
    })
}

/// `^g r = r` exactly, for every `g` in `G`.
pub fn is_base_change(setup: &GaloisSetup, r: &EigensystemRecord) -> Result<bool, OrbitError> {
    for g in 0..setup.group.order() {
        if !inner_conjugate(r, g, setup)?.same_eigensystem(r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One stated relation `^g from = to^tau` (`tau` absent means identity).
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub sigma_word: String,
    pub from: String,
    pub to: String,
    pub tau: Option<NFAutomorphism>,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn describe(&self) -> String {
        let rhs = if self.tau.is_some() { format!("{}^tau", self.to) } else { self.to.clone() };
        format!("^{}({}) = {}", self.sigma_word, self.from, rhs)
    }
}

/// Checks each stated identity on the stored primes.
pub fn verify_identities(
    setup: &GaloisSetup,
    records: &[EigensystemRecord],
    identities: &[(String, String, String, Option<NFAutomorphism>)],
) -> Result<Vec<IdentityCheck>, OrbitError> {
    let find = |l: &str| records.iter().find(|r| r.label == l).ok_or_else(|| OrbitError::UnknownLabel(l.to_string()));
    identities
        .iter()
        .map(|(word, from, to, tau)| {
            let g = setup.parse_word(word)?;
            let lhs = inner_conjugate(find(from)?, g, setup)?;
            let target = find(to)?;
            let rhs = match tau {
                Some(t) => exterior_twist(target, t)?,
                None => target.clone(),
            };
            Ok(IdentityCheck {
                sigma_word: word.clone(),
                from: from.clone(),
                to: to.clone(),
                tau: tau.clone(),
                holds: lhs.same_eigensystem(&rhs),
            })
        })
        .collect()
}

/// One Hecke constituent: label, dimension and Atkin-Lehner sign under `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceConstituent {
    pub label: String,
    pub dim: usize,
    pub atkin_lehner: Option<i8>,
}

/// Constituents of a space of newforms with their `G`-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSummary {
    pub group_order: usize,
    pub constituents: Vec<SpaceConstituent>,
    pub orbit_partition: Vec<Vec<String>>,
}

impl SpaceSummary {
    pub fn from_records(setup: &GaloisSetup, records: &[EigensystemRecord], table: &OrbitTable) -> Self {
        Self {
            group_order: setup.group.order(),
            constituents: records
                .iter()
                .map(|r| SpaceConstituent { label: r.label.clone(), dim: r.dim(), atkin_lehner: r.atkin_lehner })
                .collect(),
            orbit_partition: table
                .partition()
                .into_iter()
                .map(|c| c.into_iter().map(|i| table.labels[i].clone()).collect())
                .collect(),
        }
    }

    /// `n_f`: the number of constituents of dimension `d`.
    pub fn count_of_dim(&self, d: usize) -> usize {
        self.constituents.iter().filter(|c| c.dim == d).count()
    }

    /// `s_f = |G| / |orbit of f|`.
    pub fn stabilizer_order(&self, label: &str) -> Option<usize> {
        let orbit = self.orbit_partition.iter().find(|o| o.iter().any(|l| l == label))?;
        Some(self.group_order / orbit.len())
    }
}

/// What the constituent-count results say about one constituent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstituentFinding {
    /// `d < |G|` and `f` is the only constituent of its dimension.
    UniqueDimensionBaseChange,
    /// `n_f >= |G| / s_f`.
    ConstituentCountBound { n: usize, bound: usize, holds: bool },
    /// `gcd(d, |G|) = 1` forces `n_f` to be `1` (base change from `E`) or `|G|`.
    CoprimeDichotomy { n: usize, group_order: usize, holds: bool },
}

impl ConstituentFinding {
    pub fn flag(&self) -> Option<&'static str> {
        match self {
            Self::UniqueDimensionBaseChange => Some(FLAG_MUST_BE_BASE_CHANGE),
            Self::ConstituentCountBound { holds: false, .. } | Self::CoprimeDichotomy { holds: false, .. } => {
                Some(FLAG_DATA_INCONSISTENT)
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::UniqueDimensionBaseChange => json!({ "check": "UniqueDimensionBaseChange", "flag": self.flag() }),
            Self::ConstituentCountBound { n, bound, holds } => {
                json!({ "check": "ConstituentCountBound", "n": n, "bound": bound, "holds": holds, "flag": self.flag() })
            }
            Self::CoprimeDichotomy { n, group_order, holds } => json!({
                "check": "CoprimeDichotomy",
                "n": n,
                "group_order": group_order,
                "holds": holds,
                "classification": match (holds, *n == 1) {
                    (false, _) => "inconsistent",
                    (true, true) => "base change from E",
                    (true, false) => "orbit of size |G|",
                },
                "flag": self.flag(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorollaryReport {
    /// `(label, findings)` per constituent, in input order.
    pub entries: Vec<(String, Vec<ConstituentFinding>)>,
}

impl CorollaryReport {
    /// No finding carries `DATA_INCONSISTENT`.
    pub fn consistent(&self) -> bool {
        self.entries.iter().flat_map(|(_, f)| f).all(|f| f.flag() != Some(FLAG_DATA_INCONSISTENT))
    }

    pub fn findings(&self, label: &str) -> &[ConstituentFinding] {
        self.entries.iter().find(|(l, _)| l == label).map_or(&[], |(_, f)| f)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(l, fs)| json!({ "label": l, "findings": fs.iter().map(|f| f.to_json()).collect::<Vec<_>>() }))
            .collect();
        json!({ "consistent": self.consistent(), "constituents": entries })
    }
}

/// Runs the unique-dimension, count-bound and coprime-dimension checks on
/// every constituent.
pub fn corollary_suite(s: &SpaceSummary) -> CorollaryReport {
    let g = s.group_order;
    let entries = s
        .constituents
        .iter()
        .map(|c| {
            let n = s.count_of_dim(c.dim);
            let mut findings = Vec::new();
            if c.dim < g && n == 1 {
                findings.push(ConstituentFinding::UniqueDimensionBaseChange);
            }
            if let Some(sf) = s.stabilizer_order(&c.label) {
                let bound = g.div_ceil(sf);
                findings.push(ConstituentFinding::ConstituentCountBound { n, bound, holds: n * sf >= g });
            }
            if c.dim.gcd(&g) == 1 {
                findings.push(ConstituentFinding::CoprimeDichotomy { n, group_order: g, holds: n == 1 || n == g });
            }
            (c.label.clone(), findings)
        })
        .collect();
    CorollaryReport { entries }
}

/// `(sum of d, sum of d over constituents with w = -1)`: the genus of the
/// curve and of its quotient by `w_D = -w`.
pub fn genus_bookkeeping(s: &SpaceSummary) -> Result<(usize, usize), OrbitError> {
    let mut total = 0;
    let mut quotient = 0;
    for c in &s.constituents {
        let w = c.atkin_lehner.ok_or_else(|| OrbitError::MissingSign(c.label.clone()))?;
        total += c.dim;
        if w == -1 {
            quotient += c.dim;
        }
    }
    Ok((total, quotient))
}

/// Eigenvalues reduced into the residue field of a prime of the
/// coefficient field.
pub fn eigensystem_mod_prime(
    r: &EigensystemRecord,
    prime: &PrimeIdeal,
) -> Result<BTreeMap<String, Vec<u64>>, OrbitError> {
    r.eigenvalues
        .iter()
        .map(|(l, a)| match residue_reduce(a, prime) {
            Ok(v) => Ok((l.clone(), v)),
            Err(IdealError::NotPIntegral(_)) => Err(OrbitError::NotPIntegral(l.clone())),
            Err(e) => Err(e.into()),
        })
        .collect()
}

/// How two reduced eigensystems compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModPrimeMatch {
    Equal,
    /// Equal after applying `x -> x^(p^k)` to the first system.
    UpToFrobenius(u32),
    Different,
}

/// Compares two reduced eigensystems on their common labels, first exactly
/// and then up to a power of Frobenius of the residue field of `prime`.
pub fn compare_mod_prime(
    a: &BTreeMap<String, Vec<u64>>,
    b: &BTreeMap<String, Vec<u64>>,
    prime: &PrimeIdeal,
) -> ModPrimeMatch {
    let common: Vec<&String> = a.keys().filter(|l| b.contains_key(*l)).collect();
    if common.iter().all(|l| a[*l] == b[*l]) {
        return ModPrimeMatch::Equal;
    }
    let k = prime.residue_field();
    let mut cur: BTreeMap<&String, Vec<u64>> = common.iter().map(|l| (*l, a[*l].clone())).collect();
    for power in 1..k.extension_degree() {
        for v in cur.values_mut() {
            *v = k.frobenius(v);
        }
        if common.iter().all(|l| cur[l] == b[*l]) {
            return ModPrimeMatch::UpToFrobenius(power);
        }
    }
    ModPrimeMatch::Different
}

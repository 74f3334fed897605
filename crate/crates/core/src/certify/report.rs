//! Comparison of observed Frobenius types with a candidate group.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::group::{CycleType, GroupModel};
use super::sample::frobenius_sample_with_disc;
use super::CertifyError;
use crate::algebra::rational::{divisors_u64, exact_sqrt, is_prime_u64};
use crate::algebra::{discriminant_int, UniPoly};

/// Default bound on `|observed - expected|` for every type's frequency.
pub const DEFAULT_TOLERANCE: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Contradicted,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub cycle_type: CycleType,
    pub expected: f64,
    pub observed_count: usize,
    pub observed_frequency: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantAnalysis {
    pub discriminant: String,
    pub two_adic_valuation: u32,
    pub odd_cofactor: String,
    pub odd_cofactor_is_square: bool,
    pub discriminant_is_square: bool,
}

impl DiscriminantAnalysis {
    pub fn of(disc: &BigInt) -> Self {
        let mut v = 0;
        let mut odd = disc.clone();
        if !odd.is_zero() {
            while odd.is_even() {
                odd /= 2;
                v += 1;
            }
        }
        let is_square = |n: &BigInt| !n.is_negative() && exact_sqrt(n).is_some();
        Self {
            discriminant: disc.to_string(),
            two_adic_valuation: v,
            odd_cofactor: odd.to_string(),
            odd_cofactor_is_square: is_square(&odd),
            discriminant_is_square: is_square(disc),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub polynomial: String,
    pub degree: usize,
    pub group: String,
    pub group_order: String,
    pub max_prime: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub primes_sampled: usize,
    pub skipped_primes: Vec<u64>,
    pub observed: BTreeMap<CycleType, usize>,
    pub candidate_types: Vec<CycleType>,
    pub density_table: Vec<DensityRow>,
    pub max_deviation: f64,
    pub within_tolerance: bool,
    pub all_types_observed: bool,
    pub unexpected_types: Vec<CycleType>,
    pub verdict: Verdict,
    pub exclusions: Vec<String>,
    pub discriminant: DiscriminantAnalysis,
    pub caveat: String,
}

/// Samples Frobenius types of `f` and compares them with `candidate`.
/// The verdict is `Contradicted` exactly when some observed type does not
/// occur in the candidate.
pub fn certify_group(
    f: &UniPoly,
    candidate: &GroupModel,
    max_prime: u64,
    seed: u64,
    tolerance: f64,
) -> Result<CertReport, CertifyError> {
    if !f.is_monic() || !f.is_integral() {
        return Err(CertifyError::NotMonicIntegral);
    }
    let n = f.degree().max(0) as usize;
    if n != candidate.degree {
        return Err(CertifyError::DegreeMismatch { poly: n, group: candidate.degree });
    }
    let disc = discriminant_int(f)?;
    let sample = frobenius_sample_with_disc(f, &disc, max_prime, seed)?;
    let observed = sample.counts();
    let total = sample.primes_sampled();
    let densities = candidate.densities();

    let density_table: Vec<DensityRow> = densities
        .iter()
        .map(|(t, &expected)| {
            let count = observed.get(t).copied().unwrap_or(0);
            let freq = if total == 0 { 0.0 } else { count as f64 / total as f64 };
            DensityRow {
                cycle_type: t.clone(),
                expected,
                observed_count: count,
                observed_frequency: freq,
                deviation: (freq - expected).abs(),
            }
        })
        .collect();
    let max_deviation = density_table.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let unexpected_types: Vec<CycleType> =
        observed.keys().filter(|t| !candidate.contains_type(t)).cloned().collect();
    let all_types_observed = densities.keys().all(|t| observed.contains_key(t));
    let verdict = if unexpected_types.is_empty() { Verdict::Consistent } else { Verdict::Contradicted };
    let discriminant = DiscriminantAnalysis::of(&disc);
    let exclusions = exclusion_notes(n, candidate, &observed, &unexpected_types, &discriminant);

    Ok(CertReport {
        polynomial: f.to_string(),
        degree: n,
        group: candidate.name.clone(),
        group_order: candidate.order().to_string(),
        max_prime,
        seed,
        tolerance,
        primes_sampled: total,
        skipped_primes: sample.skipped,
        observed,
        candidate_types: densities.keys().cloned().collect(),
        density_table,
        max_deviation,
        within_tolerance: max_deviation <= tolerance,
        all_types_observed,
        unexpected_types,
        verdict,
        exclusions,
        discriminant,
        caveat: "Chebotarev sampling: a CONSISTENT verdict is statistical evidence, not a proof \
                 of the Galois group."
            .to_string(),
    })
}

fn exclusion_notes(
    n: usize,
    candidate: &GroupModel,
    observed: &BTreeMap<CycleType, usize>,
    unexpected: &[CycleType],
    disc: &DiscriminantAnalysis,
) -> Vec<String> {
    let mut notes = Vec::new();
    for t in unexpected {
        notes.push(format!("type {t} does not occur in {}: {} is excluded", candidate.name, candidate.name));
    }
    if let Some(odd) = observed.keys().find(|t| !t.is_even()) {
        notes.push(format!("type {odd} is an odd permutation: the group is not contained in A{n}"));
    } else if disc.discriminant_is_square {
        notes.push(format!("the discriminant is a square: the group is contained in A{n}"));
    }
    if is_prime_u64(n as u64) && n > 2 {
        // Types (1, k^m) with k m = n - 1 come from point stabilizers
        // x -> a x + b with a of order k in (Z/n)^x.
        let orders: Vec<usize> = observed
            .keys()
            .filter_map(|t| {
                let (last, rest) = t.0.split_last()?;
                let k = *rest.first()?;
                (*last == 1 && k > 1 && rest.iter().all(|&c| c == k)).then_some(k)
            })
            .collect();
        if !orders.is_empty() {
            let l = orders.iter().fold(1usize, |acc, &k| acc.lcm(&k));
            let excluded: Vec<String> = divisors_u64(n as u64 - 1)
                .into_iter()
                .filter(|d| d % l as u64 != 0)
                .map(|d| format!("Z/{n} x| C{d}"))
                .collect();
            if !excluded.is_empty() {
                notes.push(format!(
                    "stabilizer elements of order {l} are forced by types {}: excludes {}",
                    orders.iter().map(|k| format!("(1,{k}^{})", (n - 1) / k)).collect::<Vec<_>>().join(", "),
                    excluded.join(", ")
                ));
            }
        }
    }
    notes
}

impl CertReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "polynomial: {}", self.polynomial);
        let _ = writeln!(s, "candidate group: {} (order {})", self.group, self.group_order);
        let _ = writeln!(
            s,
            "primes sampled: {} up to {} ({} skipped as divisors of the discriminant)",
            self.primes_sampled,
            self.max_prime,
            self.skipped_primes.len()
        );
        let _ = writeln!(s, "{:<14} {:>10} {:>8} {:>10} {:>10}", "type", "expected", "count", "observed", "deviation");
        for r in &self.density_table {
            let _ = writeln!(
                s,
                "{:<14} {:>10.5} {:>8} {:>10.5} {:>10.5}",
                r.cycle_type.to_string(),
                r.expected,
                r.observed_count,
                r.observed_frequency,
                r.deviation
            );
        }
        for t in &self.unexpected_types {
            let _ = writeln!(s, "{:<14} {:>10} {:>8}", t.to_string(), "-", self.observed[t]);
        }
        let _ = writeln!(
            s,
            "max deviation {:.5} (tolerance {}): {}",
            self.max_deviation,
            self.tolerance,
            if self.within_tolerance { "within" } else { "exceeded" }
        );
        let _ = writeln!(s, "all candidate types observed: {}", self.all_types_observed);
        let d = &self.discriminant;
        let _ = writeln!(
            s,
            "discriminant: 2^{} * {} (odd cofactor square: {})",
            d.two_adic_valuation, d.odd_cofactor, d.odd_cofactor_is_square
        );
        for note in &self.exclusions {
            let _ = writeln!(s, "note: {note}");
        }
        let verdict = match self.verdict {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Contradicted => "CONTRADICTED",
        };
        let _ = writeln!(s, "verdict: {verdict}");
        let _ = writeln!(s, "{}", self.caveat);
        s
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::f17_polynomial;

    #[test]
    fn quadratic_against_c2() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let r = certify_group(&f, &GroupModel::cyclic(2).unwrap(), 1000, 0, 0.05).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.all_types_observed);
        assert!(r.within_tolerance, "{}", r.to_text());
    }

    #[test]
    fn generic_quintic_contradicts_f5() {
        let f = UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        let r = certify_group(&f, &GroupModel::frobenius(5).unwrap(), 1000, 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, Verdict::Contradicted);
        assert!(!r.unexpected_types.is_empty());
    }

    #[test]
    fn discriminant_of_h() {
        let (h, note) = f17_polynomial();
        assert!(note.contains("Elkies"));
        let d = DiscriminantAnalysis::of(&discriminant_int(&h).unwrap());
        assert_eq!(d.two_adic_valuation, 81);
        assert_eq!(d.odd_cofactor, "133705314906850236656538604798081");
        assert!(d.odd_cofactor_is_square);
        assert!(!d.discriminant_is_square);
    }

    #[test]
    fn h_small_run_is_consistent() {
        let (h, _) = f17_polynomial();
        let r = certify_group(&h, &GroupModel::frobenius(17).unwrap(), 1500, 42, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent, "{}", r.to_text());
        assert_eq!(r.skipped_primes, vec![2]);
        assert_eq!(r.observed[&CycleType::parse("(1,16)").unwrap()], 121);
        assert_eq!(r.observed[&CycleType::parse("(1,8^2)").unwrap()], 59);
        assert_eq!(r.observed[&CycleType::parse("(1,4^4)").unwrap()], 30);
        assert_eq!(r.observed[&CycleType::parse("(17)").unwrap()], 16);
        assert_eq!(r.observed[&CycleType::parse("(1,2^8)").unwrap()], 12);
        assert!(r.exclusions.iter().any(|n| n.contains("not contained in A17")));
        assert!(r.exclusions.iter().any(|n| n.contains("order 16")));
        let json = r.to_json();
        assert_eq!(json["verdict"], "CONSISTENT");
        assert_eq!(json["observed"]["(1,16)"], 121);
    }

    #[test]
    fn monotone_in_max_prime() {
        let f = UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        let g = GroupModel::frobenius(5).unwrap();
        let mut contradicted = false;
        for bound in [10, 50, 200, 1000] {
            let r = certify_group(&f, &g, bound, 0, DEFAULT_TOLERANCE).unwrap();
            if contradicted {
                assert_eq!(r.verdict, Verdict::Contradicted);
            }
            contradicted |= r.verdict == Verdict::Contradicted;
        }
        assert!(contradicted);
    }

    #[test]
    fn degree_mismatch() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(matches!(
            certify_group(&f, &GroupModel::frobenius(5).unwrap(), 10, 0, 0.02),
            Err(CertifyError::DegreeMismatch { .. })
        ));
    }
}

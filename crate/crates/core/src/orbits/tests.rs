use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dataset::{cyclic_phi, power_basis, propagate};
use super::*;
use crate::algebra::UniPoly;
use crate::ideals::dedekind_factor;
use crate::number_field::{compositum, NFAutomorphism, NumberField};

fn bundled() -> &'static Dataset {
    static D: OnceLock<Dataset> = OnceLock::new();
    D.get_or_init(|| Dataset::bundled().expect("bundled dataset parses"))
}

fn rec(label: &str) -> &'static EigensystemRecord {
    bundled().record(label).expect("label present")
}

fn setup() -> &'static GaloisSetup {
    &bundled().setup
}

fn sigma_pow(k: usize) -> usize {
    setup().parse_word(&format!("sigma^{k}")).unwrap()
}

fn tau_f() -> &'static NFAutomorphism {
    &rec("f").aut_generators[0]
}

#[test]
#[ignore]
fn write_generated_dataset() {
    let d = generate_worked_example().unwrap();
    std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/paper_example.json"), d.to_pretty_string()).unwrap();
}

#[test]
fn bundled_file_is_the_generator_output() {
    let generated = generate_worked_example().unwrap().to_pretty_string();
    assert!(generated == WORKED_EXAMPLE_JSON, "data/paper_example.json is stale; rerun the generator");
    assert_eq!(bundled().to_pretty_string(), WORKED_EXAMPLE_JSON);
}

#[test]
fn setup_of_the_octic_field() {
    let s = setup();
    assert_eq!(s.group.order(), 8);
    assert!(s.group.is_abelian());
    assert!(s.action_respects_multiplication());
    assert_eq!(s.supported_primes.len(), 25);
    assert_eq!(s.act(sigma_pow(1), "2.1"), Some("2.1"));
    // 31 splits completely and sigma permutes its primes in one 8-cycle.
    let mut cur = "31.1".to_string();
    let mut seen = vec![cur.clone()];
    for _ in 0..7 {
        cur = s.act(sigma_pow(1), &cur).unwrap().to_string();
        seen.push(cur.clone());
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 8);
    assert_eq!(s.act(sigma_pow(1), &cur), Some("31.1"));
}

#[test]
fn group_words() {
    let s = setup();
    assert_eq!(s.parse_word("1").unwrap(), 0);
    let g = s.parse_word("sigma").unwrap();
    assert_eq!(s.parse_word("sigma^2").unwrap(), s.group.mul(g, g));
    assert_eq!(s.parse_word("sigma*sigma^3").unwrap(), s.parse_word("sigma^4").unwrap());
    assert_eq!(s.word(s.parse_word("sigma^5").unwrap()), "sigma^5");
    assert!(matches!(s.parse_word("tau"), Err(OrbitError::Schema(_))));
    assert!(matches!(s.parse_word("sigma^x"), Err(OrbitError::Schema(_))));
}

#[test]
fn conjugation_by_identity_and_twist_by_identity() {
    let f = rec("f");
    assert!(inner_conjugate(f, 0, setup()).unwrap().same_eigensystem(f));
    let id = NFAutomorphism::identity(&f.coeff_field);
    assert!(exterior_twist(f, &id).unwrap().same_eigensystem(f));
}

#[test]
fn stated_identities_hold() {
    let d = bundled();
    let checks = verify_identities(&d.setup, &d.records, &d.identity_tuples()).unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    // Independently of the stored list.
    let f = rec("f");
    assert!(inner_conjugate(f, sigma_pow(1), setup()).unwrap().same_eigensystem(rec("f'")));
    let lhs = inner_conjugate(f, sigma_pow(2), setup()).unwrap();
    assert!(lhs.same_eigensystem(&exterior_twist(f, tau_f()).unwrap()));
    let g = rec("g");
    assert!(inner_conjugate(g, sigma_pow(1), setup()).unwrap().same_eigensystem(rec("g'")));
}

#[test]
fn corrupted_identity_is_detected() {
    let d = bundled();
    let wrong = Some(tau_f().pow(2));
    let ids = vec![("sigma^2".to_string(), "f".to_string(), "f".to_string(), wrong)];
    let checks = verify_identities(&d.setup, &d.records, &ids).unwrap();
    assert!(!checks[0].holds);
    let swapped = vec![("sigma".to_string(), "f".to_string(), "g'".to_string(), None)];
    assert!(matches!(
        verify_identities(&d.setup, &d.records, &swapped).map(|c| c[0].holds),
        Ok(false) | Err(OrbitError::WrongField(_))
    ));
}

#[test]
fn twist_functoriality_and_matching() {
    let f = rec("f");
    let t = tau_f();
    let twice = exterior_twist(&exterior_twist(f, t).unwrap(), t).unwrap();
    assert!(twice.same_eigensystem(&exterior_twist(f, &t.pow(2)).unwrap()));
    assert!(match_up_to_twist(f, f).unwrap().is_identity());
    assert_eq!(match_up_to_twist(f, &exterior_twist(f, t).unwrap()).as_ref(), Some(t));
    assert!(match_up_to_twist(f, rec("f'")).is_none());
    let pulled_back = inner_conjugate(rec("f'"), sigma_pow(7), setup()).unwrap();
    assert!(match_up_to_twist(f, &pulled_back).unwrap().is_identity());
    assert!(match_up_to_twist(f, rec("g")).is_none());
}

#[test]
fn wrong_field_twist_is_rejected() {
    let tau_g = &rec("g").aut_generators[0];
    assert!(matches!(exterior_twist(rec("f"), tau_g), Err(OrbitError::WrongField(_))));
}

#[test]
fn canonical_twist_is_constant_on_orbits() {
    let f = rec("f");
    let (c1, _) = canonical_twist(f);
    let (c2, t2) = canonical_twist(&exterior_twist(f, &tau_f().pow(3)).unwrap());
    assert!(c1.same_eigensystem(&c2));
    assert_eq!(t2.field(), &f.coeff_field);
}

#[test]
fn orbit_table_of_the_bundled_dataset() {
    let d = bundled();
    let table = orbit_action(&d.setup, &d.records).unwrap();
    assert_eq!(table.labels, ["f", "f'", "g", "g'", "h"]);
    assert_eq!(table.partition(), vec![vec![0, 1], vec![2, 3], vec![4]]);
    let s = sigma_pow(1);
    assert_eq!(table.action[s], vec![1, 0, 3, 2, 4]);
    assert_eq!(table.twists[s][4], d.record("h").unwrap().aut_generators[0]);
    for (i, order) in [4, 4, 4, 4, 8].into_iter().enumerate() {
        assert_eq!(table.stabilizer(i).len(), order);
    }
}

#[test]
fn orbit_table_rejects_bad_record_lists() {
    let d = bundled();
    let only_f = vec![rec("f").clone()];
    assert!(matches!(orbit_action(&d.setup, &only_f), Err(OrbitError::OrphanOrbit(_))));
    let twin = exterior_twist(rec("f"), tau_f()).unwrap();
    let dup = vec![rec("f").clone(), twin];
    assert!(matches!(orbit_action(&d.setup, &dup), Err(OrbitError::DuplicateOrbit(..))));
}

#[test]
fn phi_for_the_quartic_forms() {
    let d = bundled();
    for label in ["f", "f'", "g", "g'"] {
        let r = phi_analysis(&d.setup, &d.records, label).unwrap();
        assert_eq!(r.stabilizer_words, ["1", "sigma^2", "sigma^4", "sigma^6"], "{label}");
        let tau = &d.record(label).unwrap().aut_generators[0];
        assert_eq!(&r.images[1], tau);
        assert!(r.injective);
        assert_eq!(r.delta_order, 4);
        assert_eq!(r.fixed_field.degree(), 1);
        assert_eq!(r.descent.base.degree(), 2);
        assert_eq!(r.descent.quadratic_radicand, Some(2.into()));
        assert_eq!(r.descent.dimension, 4);
        assert_eq!(r.descent.endomorphism_field.degree(), 1);
    }
}

#[test]
fn phi_for_the_degree_24_form() {
    let d = bundled();
    let r = phi_analysis(&d.setup, &d.records, "h").unwrap();
    assert_eq!(r.stabilizer.len(), 8);
    assert!(r.injective);
    assert_eq!(r.delta_order, 8);
    assert_eq!(r.fixed_field.degree(), 3);
    assert_eq!(r.descent.base.degree(), 1);
    assert_eq!(r.descent.quadratic_radicand, None);
    assert_eq!(r.descent.dimension, 24);
    // K = L^Delta is the cubic field of c^3 + c^2 - 229c + 167: the image
    // of c lies in K and has that minimal polynomial there.
    let f_field = d.setup.base_field.clone();
    let k_h = NumberField::new(UniPoly::from_ints(&[167, -229, 1, 1])).unwrap();
    let comp = compositum(&f_field, &k_h).unwrap();
    assert_eq!(&comp.field, &d.record("h").unwrap().coeff_field);
    let c = r.fixed_field.express(&comp.right).unwrap();
    assert_eq!(c.minimal_polynomial(), UniPoly::from_ints(&[167, -229, 1, 1]));
}

#[test]
fn base_change_predicate() {
    let d = bundled();
    assert!(!is_base_change(&d.setup, rec("f")).unwrap());
    assert!(!is_base_change(&d.setup, rec("h")).unwrap());
    // Constant eigenvalues on every G-orbit of primes.
    let l = rec("f").coeff_field.clone();
    let phi = cyclic_phi(&d.setup, sigma_pow(1), &NFAutomorphism::identity(&l));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let eig = propagate(&mut rng, &d.setup, &phi, &power_basis(&l));
    let r = EigensystemRecord::new("b", l, eig, vec![tau_f().clone()], None).unwrap();
    assert!(is_base_change(&d.setup, &r).unwrap());
    let report = phi_analysis(&d.setup, std::slice::from_ref(&r), "b").unwrap();
    assert_eq!(report.stabilizer.len(), 8);
    assert!(report.images.iter().all(NFAutomorphism::is_identity));
    assert_eq!(report.delta_order, 1);
    assert_eq!(report.fixed_field.degree(), 4);
    let table = orbit_action(&d.setup, std::slice::from_ref(&r)).unwrap();
    assert!(table.action.iter().all(|row| row == &vec![0]));
}

#[test]
fn trivial_group_acts_trivially() {
    let d = bundled();
    let trivial = GaloisSetup::new(d.setup.base_field.clone(), vec![], &[2, 3, 31]).unwrap();
    let l = rec("f").coeff_field.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let phi = vec![(0, NFAutomorphism::identity(&l))];
    let eig = propagate(&mut rng, &trivial, &phi, &power_basis(&l));
    let r = EigensystemRecord::new("t", l, eig, vec![], None).unwrap();
    let table = orbit_action(&trivial, std::slice::from_ref(&r)).unwrap();
    assert_eq!(table.action, vec![vec![0]]);
    assert!(is_base_change(&trivial, &r).unwrap());
}

#[test]
fn summary_from_the_bundled_records() {
    let d = bundled();
    let table = orbit_action(&d.setup, &d.records).unwrap();
    assert_eq!(SpaceSummary::from_records(&d.setup, &d.records, &table), worked_example_summary());
}

#[test]
fn corollaries_on_the_example() {
    let report = corollary_suite(&worked_example_summary());
    assert!(report.consistent());
    for label in ["f", "f'", "g", "g'"] {
        assert_eq!(
            report.findings(label),
            [ConstituentFinding::ConstituentCountBound { n: 4, bound: 2, holds: true }]
        );
    }
    assert_eq!(report.findings("h"), [ConstituentFinding::ConstituentCountBound { n: 1, bound: 1, holds: true }]);
}

#[test]
fn unique_dimension_below_group_order_forces_base_change() {
    let s = SpaceSummary {
        group_order: 3,
        constituents: vec![SpaceConstituent { label: "a".into(), dim: 2, atkin_lehner: None }],
        orbit_partition: vec![vec!["a".into()]],
    };
    let report = corollary_suite(&s);
    assert!(report.findings("a").contains(&ConstituentFinding::UniqueDimensionBaseChange));
    assert_eq!(report.findings("a")[0].flag(), Some(FLAG_MUST_BE_BASE_CHANGE));
    assert!(report.consistent());
}

#[test]
fn coprime_dimension_with_four_constituents_is_inconsistent() {
    let labels: Vec<String> = (1..=4).map(|i| format!("c{i}")).collect();
    let s = SpaceSummary {
        group_order: 8,
        constituents: labels
            .iter()
            .map(|l| SpaceConstituent { label: l.clone(), dim: 3, atkin_lehner: Some(-1) })
            .collect(),
        orbit_partition: vec![labels.clone()],
    };
    let report = corollary_suite(&s);
    assert!(!report.consistent());
    let f = report.findings("c1");
    assert!(f.contains(&ConstituentFinding::CoprimeDichotomy { n: 4, group_order: 8, holds: false }));
    assert!(f.contains(&ConstituentFinding::ConstituentCountBound { n: 4, bound: 4, holds: true }));
}

#[test]
fn genus_counts() {
    assert_eq!(genus_bookkeeping(&worked_example_summary()).unwrap(), (40, 16));
    let mut all_plus = worked_example_summary();
    for c in &mut all_plus.constituents {
        c.atkin_lehner = Some(1);
    }
    assert_eq!(genus_bookkeeping(&all_plus).unwrap(), (40, 0));
    let single = SpaceSummary {
        group_order: 1,
        constituents: vec![SpaceConstituent { label: "a".into(), dim: 5, atkin_lehner: Some(-1) }],
        orbit_partition: vec![vec!["a".into()]],
    };
    assert_eq!(genus_bookkeeping(&single).unwrap(), (5, 5));
    let mut missing = worked_example_summary();
    missing.constituents[4].atkin_lehner = None;
    assert_eq!(genus_bookkeeping(&missing), Err(OrbitError::MissingSign("h".into())));
}

#[test]
fn reduction_modulo_the_inert_prime_of_l_f() {
    let f = rec("f");
    let two = dedekind_factor(&f.coeff_field, 2).unwrap();
    assert_eq!(two.shape(), vec![(1, 4)]);
    let p = &two.factors[0];
    let a = eigensystem_mod_prime(f, p).unwrap();
    assert_eq!(compare_mod_prime(&a, &a, p), ModPrimeMatch::Equal);
    // 2 is inert in the cyclic field L_f, so its Frobenius generates
    // Gal(L_f/Q): twisting by tau_f is a nontrivial Frobenius power mod 2.
    let twisted = eigensystem_mod_prime(&exterior_twist(f, tau_f()).unwrap(), p).unwrap();
    assert_ne!(twisted, a);
    assert!(matches!(compare_mod_prime(&a, &twisted, p), ModPrimeMatch::UpToFrobenius(1 | 3)));
    // Agreeing mod 2 but not in characteristic 0.
    let mut eig = f.eigenvalues.clone();
    let bump = f.coeff_field.from_ints(&[2, 0, 0, 0]).unwrap();
    let first = eig.keys().next().unwrap().clone();
    let v = &eig[&first] + &bump;
    eig.insert(first, v);
    let other = EigensystemRecord::new("f2", f.coeff_field.clone(), eig, f.aut_generators.clone(), None).unwrap();
    let b = eigensystem_mod_prime(&other, p).unwrap();
    assert_eq!(compare_mod_prime(&a, &b, p), ModPrimeMatch::Equal);
    assert!(match_up_to_twist(f, &other).is_none());
}

#[test]
fn reduction_needs_integrality() {
    let f = rec("f");
    let p = dedekind_factor(&f.coeff_field, 2).unwrap().factors[0].clone();
    let mut eig = BTreeMap::new();
    eig.insert("2.1".to_string(), f.coeff_field.generator());
    eig.insert("3.1".to_string(), f.coeff_field.from_ints(&[1, 0, 0, 0]).unwrap().scale(&crate::algebra::Q::new(1.into(), 2.into())));
    let r = EigensystemRecord::new("x", f.coeff_field.clone(), eig, vec![], None).unwrap();
    assert_eq!(eigensystem_mod_prime(&r, &p), Err(OrbitError::NotPIntegral("3.1".into())));
}

#[test]
fn records_must_have_a_generating_eigenvalue() {
    let l = rec("f").coeff_field.clone();
    let eig = BTreeMap::from([("2.1".to_string(), l.one())]);
    assert!(matches!(
        EigensystemRecord::new("q", l, eig, vec![], None),
        Err(OrbitError::NoGeneratingEigenvalue(_))
    ));
}

#[test]
fn schema_errors() {
    assert!(matches!(Dataset::parse("[]"), Err(OrbitError::Schema(_))));
    assert!(matches!(Dataset::parse("{"), Err(OrbitError::Schema(_))));
    let mut v: serde_json::Value = serde_json::from_str(WORKED_EXAMPLE_JSON).unwrap();
    v["constituents"][0]["dim"] = 5.into();
    assert!(matches!(Dataset::from_json(&v), Err(OrbitError::Schema(_))));
    let mut v: serde_json::Value = serde_json::from_str(WORKED_EXAMPLE_JSON).unwrap();
    v.as_object_mut().unwrap().remove("supported_primes");
    assert!(matches!(Dataset::from_json(&v), Err(OrbitError::Schema(_))));
}

/// A record over `L_f` with stabilizer `<sigma^step>` acting through
/// `tau_f^j`, together with its conjugates under `sigma^i` for `i < step`.
fn constructed_orbit(step: usize, j: usize, seed: u64) -> (Vec<EigensystemRecord>, usize, NFAutomorphism) {
    let s = setup();
    let l = rec("f").coeff_field.clone();
    let gen = sigma_pow(step % 8);
    let tau = tau_f().pow(j);
    let phi = cyclic_phi(s, gen, &tau);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eig = propagate(&mut rng, s, &phi, &power_basis(&l));
    let r = EigensystemRecord::new("r", l, eig, vec![tau_f().clone()], None).unwrap();
    let mut out = vec![r.clone()];
    for i in 1..step {
        let mut c = inner_conjugate(&r, sigma_pow(i), s).unwrap();
        c.label = format!("r{i}");
        out.push(c);
    }
    (out, gen, tau)
}

/// `(step, j)` with `tau_f^j` of order dividing `8 / step`.
fn stabilizer_shapes() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 0)), Just((1, 1)), Just((1, 2)), Just((2, 0)), Just((2, 1)), Just((2, 2)), Just((2, 3)), Just((4, 0)), Just((4, 2)), Just((8, 0))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn conjugation_commutes_with_twists(seed in any::<u64>(), g in 0usize..8, k in 0usize..4) {
        let s = setup();
        let l = rec("g").coeff_field.clone();
        // Arbitrary eigenvalues: no structure is needed for commutation.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = vec![(0, NFAutomorphism::identity(&l))];
        let eig = propagate(&mut rng, s, &phi, &power_basis(&l));
        let r = EigensystemRecord::new("x", l, eig, rec("g").aut_generators.clone(), None).unwrap();
        let tau = rec("g").aut_generators[0].pow(k);
        let g = sigma_pow(g);
        let a = inner_conjugate(&exterior_twist(&r, &tau).unwrap(), g, s).unwrap();
        let b = exterior_twist(&inner_conjugate(&r, g, s).unwrap(), &tau).unwrap();
        prop_assert!(a.same_eigensystem(&b));
    }

    #[test]
    fn orbit_table_is_an_action_with_the_built_stabilizer(
        (step, j) in stabilizer_shapes(),
        seed in any::<u64>(),
    ) {
        let s = setup();
        let (records, gen, tau) = constructed_orbit(step, j, seed);
        let table = orbit_action(s, &records).unwrap();
        for g in 0..8 {
            for h in 0..8 {
                let gh = s.group.mul(g, h);
                for i in 0..records.len() {
                    prop_assert_eq!(table.action[gh][i], table.action[h][table.action[g][i]]);
                }
            }
        }
        let stab = table.stabilizer(0);
        prop_assert_eq!(stab.len() * table.partition()[0].len(), 8);
        prop_assert_eq!(stab, s.group.subgroup(&[gen]));

        let report = phi_analysis(s, &records, "r").unwrap();
        let pos = |g: usize| report.stabilizer.iter().position(|&x| x == g).unwrap();
        prop_assert_eq!(&report.images[pos(gen)], &tau);
        for (a, &g) in report.stabilizer.iter().enumerate() {
            for (b, &h) in report.stabilizer.iter().enumerate() {
                let gh = s.group.mul(g, h);
                prop_assert_eq!(&report.images[pos(gh)], &report.images[a].compose(&report.images[b]));
            }
        }
        prop_assert_eq!(report.delta_order * report.fixed_field.degree(), 4);
        prop_assert_eq!(report.injective, report.delta_order == report.stabilizer.len());
        let bc = is_base_change(s, &records[0]).unwrap();
        prop_assert_eq!(bc, step == 1 && j == 0);
        if bc {
            prop_assert!(report.images.iter().all(NFAutomorphism::is_identity));
        }
    }
}

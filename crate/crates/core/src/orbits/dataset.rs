//! Dataset files and the deterministic generator of the bundled example.
//!
//! No eigenvalue tables are available for the example over
//! `Q(zeta_32)^+`, so the bundled file is synthetic: free eigenvalues are
//! drawn at one prime per orbit of the stabilizer, projected onto the part
//! fixed by the point stabilizer, and propagated by
//! `a_(s(P)) = phi(s)(a_P)`. The stated relations among `f, f', g, g', h`
//! hold by construction and nothing else is encoded.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::record::{inner_conjugate, EigensystemRecord, GaloisSetup};
use super::OrbitError;
use crate::algebra::rational::primes_up_to;
use crate::algebra::UniPoly;
use crate::number_field::{compositum, NFAutomorphism, NFElement, NumberField};

/// Seed of the generator behind the bundled dataset.
pub const DATASET_SEED: u64 = 32;

/// The bundled dataset, as produced by [`generate_worked_example`].
pub const WORKED_EXAMPLE_JSON: &str = include_str!("../../data/paper_example.json");

/// `^sigma from = to^tau`, with `tau` absent for the identity.
#[derive(Clone, Debug)]
pub struct Identity {
    pub sigma_word: String,
    pub from: String,
    pub to: String,
    pub tau: Option<NFAutomorphism>,
}

/// A Galois setup with its records and the relations stated among them.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub setup: GaloisSetup,
    pub records: Vec<EigensystemRecord>,
    pub identities: Vec<Identity>,
}

fn schema(msg: impl Into<String>) -> OrbitError {
    OrbitError::Schema(msg.into())
}

fn field_of(v: &Value, what: &str) -> Result<Value, OrbitError> {
    v.get(what).cloned().ok_or_else(|| schema(format!("missing \"{what}\"")))
}

impl Dataset {
    /// The bundled example.
    pub fn bundled() -> Result<Self, OrbitError> {
        Self::parse(WORKED_EXAMPLE_JSON)
    }

    pub fn parse(text: &str) -> Result<Self, OrbitError> {
        let v: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, OrbitError> {
        if !v.is_object() {
            return Err(schema("top level must be an object"));
        }
        let base = NumberField::from_json(&field_of(v, "base_field")?)?;
        let generators = field_of(v, "galois_generators")?
            .as_array()
            .ok_or_else(|| schema("\"galois_generators\" must be an array"))?
            .iter()
            .map(|g| NFAutomorphism::from_json(&base, g))
            .collect::<Result<Vec<_>, _>>()?;
        let primes = field_of(v, "supported_primes")?
            .as_array()
            .ok_or_else(|| schema("\"supported_primes\" must be an array"))?
            .iter()
            .map(|p| p.as_u64().ok_or_else(|| schema(format!("bad prime {p}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let setup = GaloisSetup::new(base, generators, &primes)?;

        let mut fields: HashMap<String, NumberField> = HashMap::new();
        let mut records = Vec::new();
        for c in field_of(v, "constituents")?.as_array().ok_or_else(|| schema("\"constituents\" must be an array"))? {
            records.push(parse_constituent(c, &mut fields)?);
        }
        let mut identities = Vec::new();
        if let Some(ids) = v.get("identities") {
            for i in ids.as_array().ok_or_else(|| schema("\"identities\" must be an array"))? {
                let text = |k: &str| -> Result<String, OrbitError> {
                    field_of(i, k)?.as_str().map(str::to_string).ok_or_else(|| schema(format!("\"{k}\" must be a string")))
                };
                let to = text("to")?;
                let target = records
                    .iter()
                    .find(|r: &&EigensystemRecord| r.label == to)
                    .ok_or_else(|| OrbitError::UnknownLabel(to.clone()))?;
                let tau = match i.get("tau_image") {
                    None | Some(Value::Null) => None,
                    Some(img) => Some(NFAutomorphism::new(NFElement::from_json(&target.coeff_field, img)?)?),
                };
                identities.push(Identity { sigma_word: text("sigma_word")?, from: text("from")?, to, tau });
            }
        }
        Ok(Self { setup, records, identities })
    }

    pub fn to_json(&self) -> Value {
        let constituents: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let eigenvalues: Map<String, Value> =
                    r.eigenvalues.iter().map(|(l, a)| (l.clone(), a.to_json())).collect();
                json!({
                    "label": r.label,
                    "dim": r.dim(),
                    "coeff_field": r.coeff_field.to_json(),
                    "aut_generators": r.aut_generators.iter().map(NFAutomorphism::to_json).collect::<Vec<_>>(),
                    "atkin_lehner": r.atkin_lehner,
                    "eigenvalues": eigenvalues,
                })
            })
            .collect();
        let identities: Vec<Value> = self
            .identities
            .iter()
            .map(|i| {
                json!({
                    "sigma_word": i.sigma_word,
                    "from": i.from,
                    "to": i.to,
                    "tau_image": i.tau.as_ref().map(|t| t.image().to_json()),
                })
            })
            .collect();
        json!({
            "base_field": self.setup.base_field.to_json(),
            "galois_generators": self.setup.generators.iter().map(NFAutomorphism::to_json).collect::<Vec<_>>(),
            "supported_primes": self.setup.supported_primes,
            "constituents": constituents,
            "identities": identities,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn record(&self, label: &str) -> Option<&EigensystemRecord> {
        self.records.iter().find(|r| r.label == label)
    }

    /// Identities as `(word, from, to, tau)` tuples.
    pub fn identity_tuples(&self) -> Vec<(String, String, String, Option<NFAutomorphism>)> {
        self.identities.iter().map(|i| (i.sigma_word.clone(), i.from.clone(), i.to.clone(), i.tau.clone())).collect()
    }
}

fn parse_constituent(c: &Value, fields: &mut HashMap<String, NumberField>) -> Result<EigensystemRecord, OrbitError> {
    let label = field_of(c, "label")?.as_str().ok_or_else(|| schema("\"label\" must be a string"))?.to_string();
    let fj = field_of(c, "coeff_field")?;
    let key = fj.to_string();
    let field = match fields.get(&key) {
        Some(k) => k.clone(),
        None => {
            let k = NumberField::from_json(&fj)?;
            fields.insert(key, k.clone());
            k
        }
    };
    let dim = field_of(c, "dim")?.as_u64().ok_or_else(|| schema("\"dim\" must be an integer"))?;
    if dim as usize != field.degree() {
        return Err(schema(format!("{label}: dim {dim} but the coefficient field has degree {}", field.degree())));
    }
    let auts = field_of(c, "aut_generators")?
        .as_array()
        .ok_or_else(|| schema("\"aut_generators\" must be an array"))?
        .iter()
        .map(|t| NFAutomorphism::from_json(&field, t))
        .collect::<Result<Vec<_>, _>>()?;
    let sign = match c.get("atkin_lehner") {
        None | Some(Value::Null) => None,
        Some(Value::Number(n)) if n.as_i64() == Some(1) => Some(1),
        Some(Value::Number(n)) if n.as_i64() == Some(-1) => Some(-1),
        Some(other) => return Err(schema(format!("{label}: bad Atkin-Lehner sign {other}"))),
    };
    let eigenvalues = field_of(c, "eigenvalues")?
        .as_object()
        .ok_or_else(|| schema("\"eigenvalues\" must be an object"))?
        .iter()
        .map(|(l, a)| Ok((l.clone(), NFElement::from_json(&field, a)?)))
        .collect::<Result<BTreeMap<_, _>, OrbitError>>()?;
    EigensystemRecord::new(&label, field, eigenvalues, auts, sign)
}

/// `x^8 - 8x^6 + 20x^4 - 16x^2 + 2`, the minimal polynomial of
/// `zeta_32 + zeta_32^-1`.
fn base_field() -> NumberField {
    NumberField::new(UniPoly::from_ints(&[2, 0, -16, 0, 20, 0, -8, 0, 1])).expect("irreducible")
}

/// `alpha -> -alpha^5 + 5 alpha^3 - 5 alpha`.
fn sigma(f: &NumberField) -> NFAutomorphism {
    NFAutomorphism::new(f.from_ints(&[0, -5, 0, 5, 0, -1, 0, 0]).expect("degree 8")).expect("root")
}

/// Random integer combination of `basis` with coefficients in `[-2, 2]`,
/// never zero.
fn random_element(rng: &mut ChaCha8Rng, basis: &[NFElement]) -> NFElement {
    loop {
        let x = basis.iter().fold(basis[0].parent().zero(), |acc, b| {
            let c: i64 = rng.gen_range(-2..=2);
            &acc + &b.scale(&crate::algebra::Q::from_integer(c.into()))
        });
        if !x.is_zero() {
            return x;
        }
    }
}

/// Eigenvalues with `a_(s(P)) = phi(s)(a_P)` for `s` in the subgroup
/// listed in `phi` as `(group index, automorphism of L)`.
pub(crate) fn propagate(
    rng: &mut ChaCha8Rng,
    setup: &GaloisSetup,
    phi: &[(usize, NFAutomorphism)],
    basis: &[NFElement],
) -> BTreeMap<String, NFElement> {
    let mut out: BTreeMap<String, NFElement> = BTreeMap::new();
    for p0 in setup.labels() {
        if out.contains_key(&p0) {
            continue;
        }
        let x = random_element(rng, basis);
        let fixing = phi.iter().filter(|(s, _)| setup.act(*s, &p0) == Some(p0.as_str()));
        let a0 = fixing.fold(x.parent().zero(), |acc, (_, t)| &acc + &t.apply(&x));
        for (s, t) in phi {
            let img = setup.act(*s, &p0).expect("label in table").to_string();
            out.entry(img).or_insert_with(|| t.apply(&a0));
        }
    }
    out
}

/// `phi` on the cyclic group generated by `g`, sending `g` to `tau`.
pub(crate) fn cyclic_phi(setup: &GaloisSetup, g: usize, tau: &NFAutomorphism) -> Vec<(usize, NFAutomorphism)> {
    let mut out = vec![(0, NFAutomorphism::identity(tau.field()))];
    let (mut s, mut t) = (g, tau.clone());
    while s != 0 {
        out.push((s, t.clone()));
        s = setup.group.mul(g, s);
        t = tau.compose(&t);
    }
    out
}

pub(crate) fn power_basis(k: &NumberField) -> Vec<NFElement> {
    (0..k.degree()).map(|i| k.generator().pow(i as u32)).collect()
}

/// Builds the bundled dataset.
///
/// `f, g` have quartic coefficient fields with `^sigma^2 f = f^tau`,
/// `f' = ^sigma f`, and likewise for `g`. `h` lives on a degree-24 stand-in
/// `L_h = F K_h` with `K_h = Q[c]/(c^3 + c^2 - 229c + 167)` and `^sigma h =
/// h^tau` for the automorphism acting as `sigma` on `F` and trivially on
/// `K_h`, so `L_h^<tau> = K_h`.
pub fn generate_worked_example() -> Result<Dataset, OrbitError> {
    let f_field = base_field();
    let s = sigma(&f_field);
    let primes: Vec<u64> = primes_up_to(100);
    let setup = GaloisSetup::new(f_field.clone(), vec![s.clone()], &primes)?;
    let sigma_idx = setup.group.index_of(&s).expect("generator");
    let sigma2 = setup.group.mul(sigma_idx, sigma_idx);
    let mut rng = ChaCha8Rng::seed_from_u64(DATASET_SEED);

    let l_f = NumberField::new(UniPoly::from_ints(&[1, -4, -4, 1, 1]))?;
    let tau_f = NFAutomorphism::new(l_f.from_ints(&[-2, 3, 1, -1])?)?;
    let l_g = NumberField::new(UniPoly::from_ints(&[1, 19, -59, 19, 1]))?;
    let eleventh = crate::algebra::Q::new(1.into(), 11.into());
    let tau_g = NFAutomorphism::new(l_g.from_ints(&[24, -48, -24, -1])?.scale(&eleventh))?;

    let k_h = NumberField::new(UniPoly::from_ints(&[167, -229, 1, 1]))?;
    let comp = compositum(&f_field, &k_h)?;
    let shift = crate::algebra::Q::from_integer(comp.shift.into());
    let tau_h = NFAutomorphism::new(&comp.left.eval_poly(&s.image().as_poly()) + &comp.right.scale(&shift))?;
    let h_basis: Vec<NFElement> = (0..3)
        .flat_map(|j| (0..8).map(move |i| (i, j)))
        .map(|(i, j)| &comp.left.pow(i) * &comp.right.pow(j))
        .collect();

    let mut records = Vec::new();
    let mut identities = Vec::new();
    for (name, field, tau) in [("f", &l_f, &tau_f), ("g", &l_g, &tau_g)] {
        let phi = cyclic_phi(&setup, sigma2, tau);
        let eig = propagate(&mut rng, &setup, &phi, &power_basis(field));
        let r = EigensystemRecord::new(name, field.clone(), eig, vec![tau.clone()], Some(-1))?;
        let mut r2 = inner_conjugate(&r, sigma_idx, &setup)?;
        r2.label = format!("{name}'");
        identities.push(Identity {
            sigma_word: "sigma".into(),
            from: name.into(),
            to: r2.label.clone(),
            tau: None,
        });
        identities.push(Identity {
            sigma_word: "sigma^2".into(),
            from: name.into(),
            to: name.into(),
            tau: Some(tau.clone()),
        });
        records.push(r);
        records.push(r2);
    }
    let phi = cyclic_phi(&setup, sigma_idx, &tau_h);
    let eig = propagate(&mut rng, &setup, &phi, &h_basis);
    records.push(EigensystemRecord::new("h", comp.field.clone(), eig, vec![tau_h.clone()], Some(1))?);
    identities.push(Identity { sigma_word: "sigma".into(), from: "h".into(), to: "h".into(), tau: Some(tau_h) });

    Ok(Dataset { setup, records, identities })
}

/// Dimensions, Atkin-Lehner signs under `w` and `G`-orbits of the five
/// constituents of the example, `|G| = 8`.
pub fn worked_example_summary() -> super::SpaceSummary {
    let c = |label: &str, dim, w| super::SpaceConstituent { label: label.into(), dim, atkin_lehner: Some(w) };
    super::SpaceSummary {
        group_order: 8,
        constituents: vec![c("f", 4, -1), c("f'", 4, -1), c("g", 4, -1), c("g'", 4, -1), c("h", 24, 1)],
        orbit_partition: vec![
            vec!["f".into(), "f'".into()],
            vec!["g".into(), "g'".into()],
            vec!["h".into()],
        ],
    }
}

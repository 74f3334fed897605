//! The whole analysis of a dataset: identities, orbit table, twist
//! homomorphisms, constituent checks and genus bookkeeping.

use serde_json::{json, Map, Value};

use super::analysis::{
    corollary_suite, genus_bookkeeping, is_base_change, orbit_action, phi_analysis, verify_identities, SpaceSummary,
};
use super::dataset::Dataset;

/// Result of [`analyze_dataset`]; `failures` is empty when everything holds.
#[derive(Clone, Debug)]
pub struct DatasetAnalysis {
    pub report: Value,
    pub failures: Vec<String>,
}

impl DatasetAnalysis {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every orbit check on `d`. Inconsistent data become failures in the
/// report rather than errors.
pub fn analyze_dataset(d: &Dataset) -> DatasetAnalysis {
    let mut failures = Vec::new();
    let mut report = Map::new();

    let identities = match verify_identities(&d.setup, &d.records, &d.identity_tuples()) {
        Ok(checks) => {
            for c in checks.iter().filter(|c| !c.holds) {
                failures.push(format!("relation fails: {}", c.describe()));
            }
            Value::Array(checks.iter().map(|c| json!({"relation": c.describe(), "holds": c.holds})).collect())
        }
        Err(e) => {
            failures.push(e.to_string());
            json!({"error": e.to_string()})
        }
    };
    report.insert("identities".into(), identities);

    let table = orbit_action(&d.setup, &d.records);
    report.insert(
        "orbit_table".into(),
        match &table {
            Ok(t) => t.to_json(),
            Err(e) => {
                failures.push(e.to_string());
                json!({"error": e.to_string()})
            }
        },
    );

    let mut phi = Vec::new();
    let mut base_change = Map::new();
    for r in &d.records {
        match phi_analysis(&d.setup, &d.records, &r.label) {
            Ok(p) => phi.push(p.to_json()),
            Err(e) => {
                failures.push(format!("{}: {e}", r.label));
                phi.push(json!({"label": r.label, "error": e.to_string()}));
            }
        }
        if let Ok(b) = is_base_change(&d.setup, r) {
            base_change.insert(r.label.clone(), json!(b));
        }
    }
    report.insert("phi".into(), Value::Array(phi));
    report.insert("base_change".into(), Value::Object(base_change));

    if let Ok(t) = &table {
        let summary = SpaceSummary::from_records(&d.setup, &d.records, t);
        let corollaries = corollary_suite(&summary);
        if !corollaries.consistent() {
            failures.push("constituent checks flag the data".into());
        }
        report.insert("corollaries".into(), corollaries.to_json());
        report.insert(
            "genus".into(),
            match genus_bookkeeping(&summary) {
                Ok((total, quotient)) => json!({"total": total, "quotient": quotient}),
                Err(e) => json!({"skipped": e.to_string()}),
            },
        );
    }

    report.insert("status".into(), json!(if failures.is_empty() { "PASS" } else { "FAIL" }));
    report.insert("failures".into(), json!(failures));
    DatasetAnalysis { report: Value::Object(report), failures }
}

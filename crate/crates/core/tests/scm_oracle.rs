mod common;

use std::collections::BTreeMap;

use common::*;
use semgrid_core::scm::{joint, Cpt, DiscreteSCM};
use semgrid_core::Iri;

#[test]
fn counterfactual_matches_twin_network() {
    assert_check(counterfactual_twin(60));
}

#[test]
fn mediation_identities() {
    assert_check(mediation(40));
}

fn named(s: &str) -> Iri {
    Iri::new(format!("urn:semgrid:var:{s}")).unwrap()
}

/// Z -> X -> Y with Z -> Y; the expected joint was multiplied out by hand
/// and committed.
#[test]
fn confounded_joint_matches_golden_file() {
    let b = |p: f64| vec![1.0 - p, p];
    let domains = ["X", "Y", "Z"].iter().map(|v| (named(v), vec!["0".to_string(), "1".to_string()])).collect();
    let scm = DiscreteSCM::new(
        domains,
        vec![
            Cpt::root(named("Z"), b(0.4)),
            Cpt::new(named("X"), vec![named("Z")], vec![b(0.2), b(0.8)]),
            Cpt::new(named("Y"), vec![named("X"), named("Z")], vec![b(0.1), b(0.5), b(0.4), b(0.9)]),
        ],
        [],
        BTreeMap::new(),
    )
    .unwrap();
    let golden: BTreeMap<String, f64> =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("golden/confounded_joint.json")).unwrap()).unwrap();
    let j = joint(&scm).unwrap();
    assert_eq!(golden.len(), j.len());
    for (key, want) in golden {
        let labels: Vec<&str> = key.split(',').map(|kv| kv.split('=').nth(1).unwrap()).collect();
        let got = j.get(&labels).unwrap();
        assert!((got - want).abs() <= 1e-15, "{key}: {got} vs {want}");
    }
}

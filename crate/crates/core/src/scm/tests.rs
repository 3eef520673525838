use super::*;
use crate::inference::identify_effect;
use crate::logic::{categorize, StatementCategory};
use crate::term::{Literal, Term, Triple};
use crate::units::KnowledgeGraph;
use crate::vocab;
use crate::QuadStore;
use alloc::string::ToString;

fn n(s: &str) -> Iri {
    Iri::new(alloc::format!("urn:v:{s}")).unwrap()
}

type Spec<'a> = (&'a str, &'a [&'a str], Vec<Vec<f64>>);

fn binary(spec: &[Spec<'_>], latent: &[&str]) -> DiscreteSCM {
    let domains = spec.iter().map(|(v, _, _)| (n(v), alloc::vec!["0".to_string(), "1".to_string()])).collect();
    let cpts = spec.iter().map(|(v, ps, rows)| Cpt::new(n(v), ps.iter().map(|p| n(p)).collect(), rows.clone())).collect();
    DiscreteSCM::new(domains, cpts, latent.iter().map(|l| n(l)), BTreeMap::new()).unwrap()
}

fn b(p1: f64) -> Vec<f64> {
    alloc::vec![1.0 - p1, p1]
}

fn confounded() -> DiscreteSCM {
    binary(
        &[
            ("Z", &[], alloc::vec![b(0.4)]),
            ("X", &["Z"], alloc::vec![b(0.2), b(0.8)]),
            ("Y", &["X", "Z"], alloc::vec![b(0.1), b(0.5), b(0.4), b(0.9)]),
        ],
        &[],
    )
}

fn assign(pairs: &[(&str, &str)]) -> Assignment {
    pairs.iter().map(|(v, x)| (n(v), x.to_string())).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn joint_basics() {
    let coin = binary(&[("C", &[], alloc::vec![b(0.5)])], &[]);
    assert_eq!(joint(&coin).unwrap().mass(), &[0.5, 0.5]);

    let copy = binary(&[("X", &[], alloc::vec![b(0.3)]), ("Y", &["X"], alloc::vec![b(0.0), b(1.0)])], &[]);
    let j = joint(&copy).unwrap();
    assert!(close(j.get(&["1", "1"]).unwrap(), 0.3, 1e-15));
    assert_eq!(j.get(&["1", "0"]).unwrap(), 0.0);

    // Variable order is X, Y, Z.
    let j = joint(&confounded()).unwrap();
    assert!(close(j.get(&["1", "1", "1"]).unwrap(), 0.4 * 0.8 * 0.9, 1e-15));
    assert!(close(j.get(&["0", "0", "0"]).unwrap(), 0.6 * 0.8 * 0.9, 1e-15));
    assert!(close(j.total(), 1.0, 1e-12));
}

#[test]
fn conditioning() {
    let j = joint(&confounded()).unwrap();
    let m = conditional(&j, &[n("Y")], &Assignment::new()).unwrap();
    assert!(close(m.mass()[1], j.marginal(&[n("Y")]).unwrap().mass()[1], 1e-15));
    let y_given_x = conditional(&j, &[n("Y")], &assign(&[("X", "1")])).unwrap();
    assert!(close(y_given_x.mass()[1], 0.336 / 0.44, 1e-12));

    let copy = binary(&[("X", &[], alloc::vec![b(0.3)]), ("Y", &["X"], alloc::vec![b(0.0), b(1.0)])], &[]);
    let j = joint(&copy).unwrap();
    assert_eq!(
        conditional(&j, &[n("Y")], &assign(&[("X", "1"), ("Y", "0")])),
        Err(ScmError::ZeroProbabilityEvidence)
    );
}

#[test]
fn surgery() {
    let scm = confounded();
    let done = intervene(&scm, &assign(&[("X", "1")])).unwrap();
    assert!(done.dag().parents(&n("X")).unwrap().is_empty());
    let p_do = joint(&done).unwrap().marginal(&[n("Y")]).unwrap().mass()[1];
    assert!(close(p_do, 0.6 * 0.4 + 0.4 * 0.9, 1e-12));
    let p_obs = conditional(&joint(&scm).unwrap(), &[n("Y")], &assign(&[("X", "1")])).unwrap().mass()[1];
    assert!((p_do - p_obs).abs() > 0.1);

    let chain = binary(&[("X", &[], alloc::vec![b(0.3)]), ("Y", &["X"], alloc::vec![b(0.2), b(0.7)])], &[]);
    let y = joint(&intervene(&chain, &assign(&[("X", "1")])).unwrap()).unwrap().marginal(&[n("Y")]).unwrap();
    assert_eq!(y.mass()[1], 0.7);
    assert!(matches!(intervene(&chain, &assign(&[("Q", "1")])), Err(ScmError::UnknownVariable(_))));
}

#[test]
fn validation() {
    let domains: BTreeMap<Iri, Vec<alloc::string::String>> =
        [(n("A"), alloc::vec!["0".into(), "1".into()])].into_iter().collect();
    let bad = DiscreteSCM::new(domains.clone(), alloc::vec![Cpt::root(n("A"), alloc::vec![0.5, 0.6])], [], BTreeMap::new());
    assert_eq!(bad.unwrap_err().code(), "INVALID_CPT");
    let missing = DiscreteSCM::new(domains, alloc::vec![], [], BTreeMap::new());
    assert_eq!(missing.unwrap_err().code(), "INVALID_CPT");

    let mut keyed = BTreeMap::new();
    keyed.insert("0".to_string(), b(0.1));
    keyed.insert("1".to_string(), b(0.9));
    let domains: BTreeMap<Iri, Vec<alloc::string::String>> =
        [n("A"), n("B")].into_iter().map(|v| (v, alloc::vec!["0".into(), "1".into()])).collect();
    let cpt = Cpt::from_keyed(n("B"), alloc::vec![n("A")], &domains, &keyed).unwrap();
    assert_eq!(cpt.rows()[1], b(0.9));
    keyed.remove("1");
    assert!(Cpt::from_keyed(n("B"), alloc::vec![n("A")], &domains, &keyed).is_err());
}

#[test]
fn too_large() {
    let spec: Vec<(alloc::string::String, Vec<f64>)> = (0..21).map(|i| (alloc::format!("V{i}"), b(0.5))).collect();
    let domains = spec.iter().map(|(v, _)| (n(v), alloc::vec!["0".to_string(), "1".to_string()])).collect();
    let cpts = spec.iter().map(|(v, r)| Cpt::root(n(v), r.clone())).collect();
    let scm = DiscreteSCM::new(domains, cpts, [], BTreeMap::new()).unwrap();
    assert_eq!(joint(&scm).unwrap_err(), ScmError::DomainTooLarge(1 << 21));
}

#[test]
fn backdoor_estimation() {
    let scm = confounded();
    let z: BTreeSet<Iri> = [n("Z")].into_iter().collect();
    let est = estimate_backdoor(&scm, &n("X"), &n("Y"), &z).unwrap();
    let truth = interventional(&scm, &n("X"), &n("Y")).unwrap();
    assert!(est.max_abs_diff(&truth).unwrap() <= 1e-12);
    assert!(close(est.prob("1", "1").unwrap(), 0.6, 1e-12));
    assert_eq!(
        estimate_backdoor(&scm, &n("X"), &n("Y"), &BTreeSet::new()),
        Err(ScmError::InvalidAdjustmentSet)
    );

    let chain = binary(&[("X", &[], alloc::vec![b(0.3)]), ("Y", &["X"], alloc::vec![b(0.2), b(0.7)])], &[]);
    let est = estimate_backdoor(&chain, &n("X"), &n("Y"), &BTreeSet::new()).unwrap();
    let obs = conditional(&joint(&chain).unwrap(), &[n("Y")], &assign(&[("X", "1")])).unwrap();
    assert!(close(est.prob("1", "1").unwrap(), obs.mass()[1], 1e-15));

    let desc = binary(
        &[("X", &[], alloc::vec![b(0.3)]), ("Y", &["X"], alloc::vec![b(0.2), b(0.7)]), ("D", &["X"], alloc::vec![b(0.5), b(0.6)])],
        &[],
    );
    let d: BTreeSet<Iri> = [n("D")].into_iter().collect();
    assert_eq!(estimate_backdoor(&desc, &n("X"), &n("Y"), &d), Err(ScmError::InvalidAdjustmentSet));
}

fn latent_mediated() -> DiscreteSCM {
    binary(
        &[
            ("U", &[], alloc::vec![b(0.35)]),
            ("X", &["U"], alloc::vec![b(0.15), b(0.85)]),
            ("M", &["X"], alloc::vec![b(0.25), b(0.7)]),
            ("Y", &["M", "U"], alloc::vec![b(0.1), b(0.6), b(0.45), b(0.95)]),
        ],
        &["U"],
    )
}

#[test]
fn frontdoor_estimation() {
    let scm = latent_mediated();
    let m: BTreeSet<Iri> = [n("M")].into_iter().collect();
    let est = estimate_frontdoor(&scm, &n("X"), &n("Y"), &m).unwrap();
    let truth = interventional(&scm, &n("X"), &n("Y")).unwrap();
    assert!(est.max_abs_diff(&truth).unwrap() <= 1e-12);

    let chain = binary(
        &[("X", &[], alloc::vec![b(0.3)]), ("M", &["X"], alloc::vec![b(0.2), b(0.7)]), ("Y", &["M"], alloc::vec![b(0.1), b(0.8)])],
        &[],
    );
    let fd = estimate_frontdoor(&chain, &n("X"), &n("Y"), &m).unwrap();
    let bd = estimate_backdoor(&chain, &n("X"), &n("Y"), &BTreeSet::new()).unwrap();
    let truth = interventional(&chain, &n("X"), &n("Y")).unwrap();
    assert!(fd.max_abs_diff(&truth).unwrap() <= 1e-12);
    assert!(bd.max_abs_diff(&truth).unwrap() <= 1e-12);

    let direct = binary(
        &[
            ("X", &[], alloc::vec![b(0.3)]),
            ("M", &["X"], alloc::vec![b(0.2), b(0.7)]),
            ("Y", &["M", "X"], alloc::vec![b(0.1), b(0.8), b(0.3), b(0.5)]),
        ],
        &[],
    );
    assert_eq!(estimate_frontdoor(&direct, &n("X"), &n("Y"), &m), Err(ScmError::InvalidMediatorSet));
}

#[test]
fn estimands_evaluate_to_truth() {
    for scm in [confounded(), latent_mediated()] {
        let est = identify_effect(scm.dag(), &n("X"), &n("Y")).unwrap();
        let value = evaluate_estimand(&scm, &est).unwrap();
        let truth = interventional(&scm, &n("X"), &n("Y")).unwrap();
        assert!(value.max_abs_diff(&truth).unwrap() <= 1e-12, "{}", est.render_local());
    }
    let hidden = binary(
        &[("U", &[], alloc::vec![b(0.5)]), ("X", &["U"], alloc::vec![b(0.2), b(0.7)]), ("Y", &["X", "U"], alloc::vec![b(0.1), b(0.3), b(0.5), b(0.9)])],
        &["U"],
    );
    let est = identify_effect(hidden.dag(), &n("X"), &n("Y")).unwrap();
    assert_eq!(evaluate_estimand(&hidden, &est), Err(ScmError::NotIdentified));
}

fn mediation_fixture(m_rows: Vec<Vec<f64>>, y_rows: Vec<Vec<f64>>) -> DiscreteSCM {
    binary(&[("C", &[], alloc::vec![b(0.4)]), ("M", &["C"], m_rows), ("Y", &["C", "M"], y_rows)], &[])
}

#[test]
fn mediation() {
    let flat_m = mediation_fixture(alloc::vec![b(0.3), b(0.3)], alloc::vec![b(0.1), b(0.5), b(0.4), b(0.7)]);
    let r = mediation_effects(&flat_m, &n("C"), &n("M"), &n("Y"), "0", "1").unwrap();
    assert_eq!(r.nie, 0.0);
    assert!(r.assumptions_hold());

    let flat_y = mediation_fixture(alloc::vec![b(0.3), b(0.8)], alloc::vec![b(0.1), b(0.5), b(0.1), b(0.5)]);
    let r = mediation_effects(&flat_y, &n("C"), &n("M"), &n("Y"), "0", "1").unwrap();
    assert_eq!(r.nde, 0.0);

    // Additive outcome table: P(Y=1 | c, m) = 0.1 + 0.3 c + 0.4 m.
    let additive = mediation_fixture(alloc::vec![b(0.3), b(0.8)], alloc::vec![b(0.1), b(0.5), b(0.4), b(0.8)]);
    let r = mediation_effects(&additive, &n("C"), &n("M"), &n("Y"), "0", "1").unwrap();
    assert!(close(r.te, r.nde + r.nie, 1e-9));
    assert!(close(r.nde, 0.3, 1e-12));
    assert!(close(r.nie, 0.4 * 0.5, 1e-12));

    assert!(matches!(
        mediation_effects(&additive, &n("M"), &n("C"), &n("Y"), "0", "1"),
        Err(ScmError::NotAChain { .. })
    ));
    let worded = DiscreteSCM::new(
        [(n("C"), alloc::vec!["0".into(), "1".into()]), (n("M"), alloc::vec!["0".into(), "1".into()]), (n("Y"), alloc::vec!["low".into(), "high".into()])]
            .into_iter()
            .collect(),
        alloc::vec![Cpt::root(n("C"), b(0.5)), Cpt::new(n("M"), alloc::vec![n("C")], alloc::vec![b(0.2), b(0.6)]), Cpt::new(n("Y"), alloc::vec![n("M")], alloc::vec![b(0.2), b(0.6)])],
        [],
        BTreeMap::new(),
    )
    .unwrap();
    assert_eq!(
        mediation_effects(&worded, &n("C"), &n("M"), &n("Y"), "0", "1"),
        Err(ScmError::NonNumericOutcome("low".into()))
    );
}

#[test]
fn mediation_reports_confounding() {
    let confounded_my = binary(
        &[
            ("C", &[], alloc::vec![b(0.4)]),
            ("W", &[], alloc::vec![b(0.5)]),
            ("M", &["C", "W"], alloc::vec![b(0.1), b(0.3), b(0.6), b(0.8)]),
            ("Y", &["M", "W"], alloc::vec![b(0.2), b(0.5), b(0.4), b(0.9)]),
        ],
        &["W"],
    );
    let r = mediation_effects(&confounded_my, &n("C"), &n("M"), &n("Y"), "0", "1").unwrap();
    assert_eq!(r.assumptions_checked, [true, false, true]);
}

fn copy_model() -> DiscreteSCM {
    binary(
        &[
            ("U", &[], alloc::vec![b(0.5)]),
            ("X", &["U"], alloc::vec![b(0.0), b(1.0)]),
            ("Y", &["X"], alloc::vec![b(0.0), b(1.0)]),
        ],
        &["U"],
    )
}

#[test]
fn counterfactual_copy() {
    let scm = copy_model();
    let q = CounterfactualQuery::new(n("Y")).observe(n("X"), "1").observe(n("Y"), "1").set(n("X"), "0");
    let d = counterfactual(&scm, &q).unwrap();
    assert_eq!(d.mass(), &[1.0, 0.0]);

    let free = CounterfactualQuery::new(n("Y")).set(n("X"), "1");
    let d = counterfactual(&scm, &free).unwrap();
    let truth = joint(&intervene(&scm, &assign(&[("X", "1")])).unwrap()).unwrap().marginal(&[n("Y")]).unwrap();
    assert_eq!(d.max_abs_diff(&truth), Some(0.0));

    let consistent = CounterfactualQuery::new(n("Y")).observe(n("X"), "1").observe(n("Y"), "1").set(n("X"), "1");
    assert_eq!(counterfactual(&scm, &consistent).unwrap().point(), Some(alloc::vec![1]));

    let impossible = CounterfactualQuery::new(n("Y")).observe(n("X"), "1").observe(n("Y"), "0");
    assert_eq!(counterfactual(&scm, &impossible), Err(ScmError::ZeroProbabilityEvidence));
    assert!(matches!(counterfactual(&confounded(), &free), Err(ScmError::NotDeterministicForm(_))));
}

#[test]
fn canonical_form_keeps_the_joint() {
    let scm = confounded();
    let canon = canonical_form(&scm).unwrap();
    assert!(is_deterministic_form(&canon));
    assert!(!is_deterministic_form(&scm));
    let original = joint(&scm).unwrap();
    let vars: Vec<Iri> = scm.variables().to_vec();
    let recovered = joint(&canon).unwrap().marginal(&vars).unwrap();
    assert!(original.max_abs_diff(&recovered).unwrap() <= 1e-12);

    // Evidence-free counterfactuals reduce to interventions.
    let q = CounterfactualQuery::new(n("Y")).set(n("X"), "1");
    let d = counterfactual(&canon, &q).unwrap();
    let truth = interventional(&scm, &n("X"), &n("Y")).unwrap();
    assert!(close(d.mass()[1], truth.prob("1", "1").unwrap(), 1e-12));
}

#[test]
fn potential_outcome_unit() {
    let mut kg = KnowledgeGraph::deterministic(QuadStore::new());
    let observed = kg
        .mint_statement_unit(
            &[
                Triple::new(n("plot7"), vocab::rdf_type(), n("Plot")),
                Triple::new(n("plot7"), n("invasionSuccess"), Literal::simple("high")),
            ],
            &[vocab::su_assertional_statement_unit()],
            &[],
        )
        .unwrap();
    let universal = kg
        .mint_statement_unit(
            &[
                Triple::new(n("nd"), vocab::rdf_type(), vocab::su_every_instance_resource()),
                Triple::new(n("nd"), vocab::rdf_type(), n("NativeDensity")),
                Triple::new(n("is"), vocab::rdf_type(), vocab::su_some_instance_resource()),
                Triple::new(n("is"), vocab::rdf_type(), n("InvasionSuccess")),
                Triple::new(n("nd"), vocab::ro_negatively_regulates_characteristic(), n("is")),
            ],
            &[vocab::su_universal_statement_unit()],
            &[],
        )
        .unwrap();
    let result = Distribution::from_entries(
        alloc::vec![n("InvasionSuccess")],
        alloc::vec![alloc::vec!["low".into(), "high".into()]],
        [(alloc::vec![0], 0.8), (alloc::vec![1], 0.2)],
    );
    let intervention = assign(&[("NativeDensity", "high")]);
    let method = n("BayesianNetworkInference");
    let po = build_potential_outcome_unit(&mut kg, &observed.id, &result, &universal.id, &intervention, &method).unwrap();
    assert_eq!(po.members.len(), 3);
    assert!(po.has_class(&vocab::su_potential_outcome_compound_unit()));
    assert_eq!(po.members[0], observed.id);
    assert_eq!(po.members[2], universal.id);
    let cf = kg.statement_unit(&po.members[1]).unwrap();
    assert!(cf.has_class(&vocab::su_counterfactual_statement_unit()));
    assert_eq!(categorize(&cf), Ok(StatementCategory::Contingent));
    assert_eq!(
        po.meta_values(&vocab::su_intervention()),
        alloc::vec![&Term::from(Literal::simple("do(NativeDensity = high)"))]
    );

    let missing = n("nowhere");
    let err = build_potential_outcome_unit(&mut kg, &observed.id, &result, &missing, &intervention, &method);
    assert_eq!(err.unwrap_err().code(), "DANGLING_MEMBER");
}

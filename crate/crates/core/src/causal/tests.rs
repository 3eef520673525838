use super::*;
use crate::term::Triple;
use alloc::format;
use alloc::vec;

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn eco(local: &str) -> Iri {
    iri(&format!("https://example.org/eco/{local}"))
}

fn universal(kg: &mut KnowledgeGraph, src: &str, predicate: Iri, dst: &str) -> Iri {
    let s = eco(&format!("every_{src}_{dst}"));
    let o = eco(&format!("some_{dst}_{src}"));
    let content = vec![
        Triple::new(s.clone(), vocab::rdf_type(), eco(src)),
        Triple::new(s.clone(), vocab::rdf_type(), vocab::su_every_instance_resource()),
        Triple::new(o.clone(), vocab::rdf_type(), eco(dst)),
        Triple::new(o.clone(), vocab::rdf_type(), vocab::su_some_instance_resource()),
        Triple::new(s, predicate, o),
    ];
    kg.mint_statement_unit(
        &content,
        &[vocab::su_universal_statement_unit(), vocab::su_causal_statement_unit()],
        &[],
    )
    .unwrap()
    .id
}

struct Fig9 {
    kg: KnowledgeGraph,
    a: Iri,
    b: Iri,
    c: Iri,
    d: Iri,
}

fn fig9() -> Fig9 {
    let mut kg = KnowledgeGraph::default();
    let a = universal(&mut kg, "CS", vocab::ro_negatively_regulates_characteristic(), "IS");
    let b = universal(&mut kg, "ND", vocab::ro_causally_upstream_negative(), "CS");
    let c = universal(&mut kg, "FIT", vocab::su_causally_influences_positive(), "IS");
    let d = universal(&mut kg, "ND", vocab::ro_negatively_regulates_characteristic(), "FIT");
    Fig9 { kg, a, b, c, d }
}

fn statements(f: &Fig9) -> Vec<CausalStatement> {
    [&f.a, &f.b, &f.c, &f.d].into_iter().map(|u| causal_statement(&f.kg, u).unwrap()).collect()
}

#[test]
fn polarity_table() {
    assert_eq!(polarity_of(&vocab::ro_negatively_regulates_characteristic()), Polarity::Negative);
    assert_eq!(polarity_of(&vocab::ro_negatively_correlated_with()), Polarity::Negative);
    assert_eq!(polarity_of(&vocab::ro_causally_upstream_negative()), Polarity::Negative);
    assert_eq!(polarity_of(&vocab::su_causally_influences_positive()), Polarity::Positive);
    assert_eq!(polarity_of(&vocab::ro_correlated_with()), Polarity::Unsigned);
    assert_eq!(polarity_of(&iri("https://example.org/unknown")), Polarity::Unsigned);
}

#[test]
fn composition() {
    let f = fig9();
    let a = causal_statement(&f.kg, &f.a).unwrap();
    let b = causal_statement(&f.kg, &f.b).unwrap();
    assert!(composable(&b, &a));
    assert!(!composable(&a, &b));
    let chain = compose_chain(&f.kg, &b, &a).unwrap();
    assert_eq!(chain.variables.len(), 3);
    assert_eq!(chain.edges.len(), 2);
    assert!(chain.edges.iter().all(|e| e.polarity == Polarity::Negative));
    assert_eq!(chain.substitutions[0].replaced, a.source.resource);
    assert_eq!(chain.substitutions[0].by, b.target.resource);
    assert!(chain.composite.iter().all(|t| t.subject != a.source.resource));
    assert!(matches!(compose_chain(&f.kg, &a, &b), Err(CausalError::NotComposable(_))));

    let mut b_some = b.clone();
    b_some.source.kind = ResourceKind::SomeInstance;
    let mut a_some = a.clone();
    a_some.source.kind = ResourceKind::SomeInstance;
    assert!(!composable(&b, &a_some));
}

#[test]
fn fig9_map_and_junctions() {
    let f = fig9();
    let mut sts = statements(&f);
    let net = build_causal_map(&sts).unwrap();
    assert_eq!(net.variables.len(), 4);
    assert_eq!(net.edges.len(), 4);
    assert!(check_acyclic(&net).acyclic);
    sts.reverse();
    sts.push(sts[0].clone());
    let again = build_causal_map(&sts).unwrap();
    assert_eq!(again.edges, net.edges);
    assert_eq!(again.variables, net.variables);

    let j = classify_junctions(&net).unwrap();
    let got: Vec<(JunctionKind, &str, &str, &str)> =
        j.iter().map(|j| (j.kind, j.v1.local_name(), j.v2.local_name(), j.v3.local_name())).collect();
    assert_eq!(got.len(), 4);
    assert!(got.contains(&(JunctionKind::Chain, "ND", "CS", "IS")));
    assert!(got.contains(&(JunctionKind::Chain, "ND", "FIT", "IS")));
    assert!(got.contains(&(JunctionKind::Fork, "CS", "ND", "FIT")));
    assert!(got.contains(&(JunctionKind::Collider, "CS", "IS", "FIT")));
    let chain_cs = j.iter().find(|j| j.v2 == eco("CS")).unwrap();
    assert_eq!(chain_cs.member_edges, [f.b.clone(), f.a.clone()]);
}

#[test]
fn persisted_units() {
    let mut f = fig9();
    let mut net = build_causal_map(&statements(&f)).unwrap();
    let id = persist_causal_map(&mut f.kg, &mut net).unwrap();
    let loaded = load_causal_map(&f.kg, &id).unwrap();
    assert_eq!(loaded.edges, net.edges);
    let junctions = classify_junctions(&net).unwrap();
    for j in &junctions {
        let c = persist_junction(&mut f.kg, j).unwrap();
        assert_eq!(c.id, j.id);
        assert!(c.has_class(&j.kind.class()));
    }
    assert_eq!(f.kg.units_of_class(&vocab::su_fork_junction_unit()).len(), 1);
    let p = extract_perspective(&net, &eco("ND"), &eco("IS"), None, f.kg.store()).unwrap();
    let stored = persist_perspective(&mut f.kg, &p).unwrap();
    assert_eq!(stored.members.len(), 4);
}

#[test]
fn cycles() {
    let mut kg = KnowledgeGraph::default();
    let x = universal(&mut kg, "X", vocab::ro_causally_influences(), "Y");
    let y = universal(&mut kg, "Y", vocab::ro_causally_influences(), "X");
    let sts = vec![causal_statement(&kg, &x).unwrap(), causal_statement(&kg, &y).unwrap()];
    let net = build_causal_map(&sts).unwrap();
    let report = check_acyclic(&net);
    assert!(!report.acyclic);
    let cycle = report.cycle.unwrap();
    assert_eq!(cycle.len(), 3);
    assert_eq!(cycle.first(), cycle.last());
    assert!(matches!(classify_junctions(&net), Err(CausalError::CyclicGraph(_))));
    assert!(check_acyclic(&CausalNetwork::default()).acyclic);
}

#[test]
fn perspectives() {
    let mut f = fig9();
    let net = build_causal_map(&statements(&f)).unwrap();
    let p = extract_perspective(&net, &eco("ND"), &eco("IS"), None, f.kg.store()).unwrap();
    assert_eq!(p.member_statements.len(), 4);
    assert_eq!(p.paths.iter().filter(|p| p.causal).count(), 2);
    assert_eq!(p.kind, PerspectiveKind::Causal);

    let p = extract_perspective(&net, &eco("CS"), &eco("FIT"), None, f.kg.store()).unwrap();
    assert_eq!(p.paths.len(), 2);
    assert!(p.paths.iter().all(|p| !p.causal));
    assert_eq!(p.member_statements.len(), 4);

    assert_eq!(
        extract_perspective(&net, &eco("XX"), &eco("IS"), None, f.kg.store()),
        Err(CausalError::UnknownVariable(eco("XX")))
    );

    let taxon = iri("https://example.org/taxon");
    let plants = Term::Iri(iri("https://example.org/plants"));
    for u in [&f.b, &f.a] {
        pin_annotation(&mut f.kg, u, taxon.clone(), plants.clone()).unwrap();
    }
    let filter = ContextFilter::new(vec![(taxon, plants)]);
    let ctx = extract_perspective(&net, &eco("ND"), &eco("IS"), Some(&filter), f.kg.store()).unwrap();
    assert_eq!(ctx.kind, PerspectiveKind::Contextual);
    let mut expected = vec![f.a.clone(), f.b.clone()];
    expected.sort();
    assert_eq!(ctx.member_statements, expected);
    assert_ne!(ctx.id, p.id);
}

#[test]
fn correlations_get_interpretation_links() {
    let mut kg = KnowledgeGraph::default();
    let causal = universal(&mut kg, "CS", vocab::ro_negatively_regulates_characteristic(), "IS");
    let s = eco("every_cs_corr");
    let o = eco("some_is_corr");
    let content = vec![
        Triple::new(s.clone(), vocab::rdf_type(), eco("CS")),
        Triple::new(s.clone(), vocab::rdf_type(), vocab::su_every_instance_resource()),
        Triple::new(o.clone(), vocab::rdf_type(), eco("IS")),
        Triple::new(o.clone(), vocab::rdf_type(), vocab::su_some_instance_resource()),
        Triple::new(s, vocab::ro_negatively_correlated_with(), o),
    ];
    let corr = kg
        .mint_statement_unit(
            &content,
            &[vocab::su_universal_statement_unit(), vocab::su_correlation_statement_unit()],
            &[],
        )
        .unwrap()
        .id;
    let sts = universal_causal_statements(&kg);
    assert_eq!(sts.len(), 2);
    let mut net = build_causal_map(&sts).unwrap();
    assert_eq!(net.edges.len(), 1);
    assert_eq!(net.correlation_edges.len(), 1);
    assert_eq!(net.interpretations, vec![(causal.clone(), corr.clone())]);
    persist_causal_map(&mut kg, &mut net).unwrap();
    let unit = kg.statement_unit(&causal).unwrap();
    assert_eq!(unit.meta_values(&vocab::su_causal_interpretation_of()), vec![&Term::Iri(corr)]);
}

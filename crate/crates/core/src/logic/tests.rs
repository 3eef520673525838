use super::*;
use alloc::format;

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn eco(local: &str) -> Iri {
    iri(&format!("https://example.org/eco/{local}"))
}

/// `subject_kind` CS-typed resource --negatively regulates--> `object_kind` IS-typed resource.
fn cs_is(tag: &str, subject: ResourceKind, object: ResourceKind) -> Vec<Triple> {
    let s = eco(&format!("cs_{tag}"));
    let o = eco(&format!("is_{tag}"));
    let mut t = vec![
        Triple::new(s.clone(), vocab::rdf_type(), eco("CS")),
        Triple::new(o.clone(), vocab::rdf_type(), eco("IS")),
        Triple::new(s.clone(), vocab::ro_negatively_regulates_characteristic(), o.clone()),
    ];
    if let Some(m) = subject.marker_class() {
        t.push(Triple::new(s, vocab::rdf_type(), m));
    }
    if let Some(m) = object.marker_class() {
        t.push(Triple::new(o, vocab::rdf_type(), m));
    }
    t
}

fn mint(kg: &mut KnowledgeGraph, triples: &[Triple], class: Iri) -> StatementUnit {
    kg.mint_statement_unit(triples, &[class, vocab::su_causal_statement_unit()], &[]).unwrap()
}

#[test]
fn categories() {
    use ResourceKind::*;
    let mut kg = KnowledgeGraph::default();
    let cases = [
        (Instance, Instance, Ok(StatementCategory::Assertional)),
        (SomeInstance, SomeInstance, Ok(StatementCategory::Contingent)),
        (SomeInstance, Instance, Ok(StatementCategory::Contingent)),
        (MostInstances, SomeInstance, Ok(StatementCategory::Prototypical)),
        (EveryInstance, SomeInstance, Ok(StatementCategory::Universal)),
        (EveryInstance, EveryInstance, Err(LogicError::MixedQuantifiers)),
        (Instance, SomeInstance, Err(LogicError::MixedQuantifiers)),
        (MostInstances, EveryInstance, Err(LogicError::MixedQuantifiers)),
    ];
    for (i, (s, o, expected)) in cases.into_iter().enumerate() {
        let u = mint(&mut kg, &cs_is(&format!("{i}"), s, o), vocab::su_statement_unit());
        assert_eq!(categorize(&u), expected, "{s:?} {o:?}");
    }
}

#[test]
fn cascade_from_universal() {
    let mut kg = KnowledgeGraph::default();
    let u = mint(
        &mut kg,
        &cs_is("u", ResourceKind::EveryInstance, ResourceKind::SomeInstance),
        vocab::su_universal_statement_unit(),
    );
    let twins = derive_entailed(&mut kg, &u.id).unwrap();
    let cats: Vec<_> = twins.iter().map(|t| categorize(t).unwrap()).collect();
    assert_eq!(cats, vec![StatementCategory::Prototypical, StatementCategory::Contingent]);
    for t in &twins {
        assert_eq!(t.meta_values(&vocab::su_derived_from()), vec![&Term::Iri(u.id.clone())]);
        assert_eq!(t.meta_values(&vocab::su_derived_by()), vec![&Term::Iri(vocab::su_rule_universal_to_weaker())]);
        assert!(t.has_class(&vocab::su_causal_statement_unit()));
    }
    let before = kg.store().len();
    let again = derive_entailed(&mut kg, &u.id).unwrap();
    assert_eq!(kg.store().len(), before);
    assert_eq!(again, twins);

    let proto_twins = derive_entailed(&mut kg, &twins[0].id).unwrap();
    assert_eq!(proto_twins.len(), 1);
    assert_eq!(categorize(&proto_twins[0]).unwrap(), StatementCategory::Contingent);
    assert!(derive_entailed(&mut kg, &twins[1].id).unwrap().is_empty());
}

#[test]
fn assertional_twin_and_unclassed() {
    let mut kg = KnowledgeGraph::default();
    let a = mint(&mut kg, &cs_is("a", ResourceKind::Instance, ResourceKind::Instance), vocab::su_statement_unit());
    let twins = derive_entailed(&mut kg, &a.id).unwrap();
    assert_eq!(twins.len(), 1);
    let twin = &twins[0];
    assert_eq!(categorize(twin).unwrap(), StatementCategory::Contingent);
    assert!(twin.content.iter().all(|q| q.subject != eco("cs_a")));

    let bare = [Triple::new(eco("lonely"), vocab::ro_has_quality(), eco("q"))];
    let b = kg.mint_statement_unit(&bare, &[vocab::su_statement_unit()], &[]).unwrap();
    assert_eq!(derive_entailed(&mut kg, &b.id), Err(LogicError::UnclassedInstance(eco("lonely"))));
}

#[test]
fn satisfaction_links() {
    let mut kg = KnowledgeGraph::default();
    let a = mint(&mut kg, &cs_is("a", ResourceKind::Instance, ResourceKind::Instance), vocab::su_statement_unit());
    let u = mint(
        &mut kg,
        &cs_is("u", ResourceKind::EveryInstance, ResourceKind::SomeInstance),
        vocab::su_universal_statement_unit(),
    );
    assert_eq!(check_satisfies(&a, &u), Ok(true));
    assert!(matches!(check_satisfies(&u, &a), Err(LogicError::ShapeMismatch(_))));
    assert!(evidence_for(&kg, &u.id).supporting.is_empty());
    link_satisfies(&mut kg, &a.id, &u.id).unwrap();
    assert_eq!(evidence_for(&kg, &u.id).supporting, vec![a.id.clone()]);

    let other = vec![
        Triple::new(eco("x"), vocab::rdf_type(), eco("FIT")),
        Triple::new(eco("y"), vocab::rdf_type(), eco("IS")),
        Triple::new(eco("x"), vocab::ro_negatively_regulates_characteristic(), eco("y")),
    ];
    let b = mint(&mut kg, &other, vocab::su_statement_unit());
    assert_eq!(check_satisfies(&b, &u), Ok(false));
    assert!(matches!(link_satisfies(&mut kg, &b.id, &u.id), Err(LogicError::SatisfactionFails { .. })));
    kg.add_meta(&b.id, vocab::su_contradicts(), u.id.clone()).unwrap();
    let ev = evidence_for(&kg, &u.id);
    assert_eq!(ev.contradicting, vec![b.id.clone()]);
    assert!(!ev.supporting.contains(&b.id));
}

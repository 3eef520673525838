//! Statement categories, the entailment cascade between them, and
//! instance-to-universal satisfaction links.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::id::derived_iri;
use crate::term::{Iri, Quad, Term, Triple};
use crate::units::{
    meta_graph, primary_triple, resource_kind, target_classes, KnowledgeGraph, ResourceKind, StatementUnit, UnitError,
};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementCategory {
    Assertional,
    Contingent,
    Prototypical,
    Universal,
}

impl StatementCategory {
    pub const ALL: [StatementCategory; 4] = [
        StatementCategory::Assertional,
        StatementCategory::Contingent,
        StatementCategory::Prototypical,
        StatementCategory::Universal,
    ];

    pub fn class(self) -> Iri {
        match self {
            StatementCategory::Assertional => vocab::su_assertional_statement_unit(),
            StatementCategory::Contingent => vocab::su_contingent_statement_unit(),
            StatementCategory::Prototypical => vocab::su_prototypical_statement_unit(),
            StatementCategory::Universal => vocab::su_universal_statement_unit(),
        }
    }

    pub fn from_class(class: &Iri) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.class() == *class)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StatementCategory::Assertional => "assertional",
            StatementCategory::Contingent => "contingent",
            StatementCategory::Prototypical => "prototypical",
            StatementCategory::Universal => "universal",
        }
    }

    /// Categories directly entailed, with the rule that licenses each.
    pub fn entails(self) -> Vec<(StatementCategory, Iri)> {
        match self {
            StatementCategory::Assertional => {
                vec![(StatementCategory::Contingent, vocab::su_rule_assertional_to_contingent())]
            }
            StatementCategory::Prototypical => {
                vec![(StatementCategory::Contingent, vocab::su_rule_prototypical_to_contingent())]
            }
            StatementCategory::Universal => vec![
                (StatementCategory::Prototypical, vocab::su_rule_universal_to_weaker()),
                (StatementCategory::Contingent, vocab::su_rule_universal_to_weaker()),
            ],
            StatementCategory::Contingent => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("content mixes quantifiers in a way no statement category allows")]
    MixedQuantifiers,
    #[error("unit {0} has no primary triple")]
    NoPrimaryTriple(Iri),
    #[error("instance {0} has no target class to generalize to")]
    UnclassedInstance(Iri),
    #[error("units do not share a shape: {0}")]
    ShapeMismatch(String),
    #[error("{instance} does not satisfy {universal}")]
    SatisfactionFails { instance: Iri, universal: Iri },
    #[error(transparent)]
    Unit(#[from] UnitError),
}

impl LogicError {
    pub fn code(&self) -> &'static str {
        match self {
            LogicError::MixedQuantifiers => "MIXED_QUANTIFIERS",
            LogicError::NoPrimaryTriple(_) => "NO_PRIMARY_TRIPLE",
            LogicError::UnclassedInstance(_) => "UNCLASSED_INSTANCE",
            LogicError::ShapeMismatch(_) => "SHAPE_MISMATCH",
            LogicError::SatisfactionFails { .. } => "SATISFACTION_FAILS",
            LogicError::Unit(e) => e.code(),
        }
    }
}

fn quantified_resources(content: &BTreeSet<Quad>) -> Vec<(Iri, ResourceKind)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for q in content {
        if q.predicate.as_str() == vocab::RDF_TYPE && seen.insert(q.subject.clone()) {
            let kind = resource_kind(content, &q.subject);
            if kind.is_quantified() {
                out.push((q.subject.clone(), kind));
            }
        }
    }
    out
}

/// Category from the quantifier kinds in the content.
///
/// The subject of the primary triple decides the candidate; every other
/// quantified resource must be a some-instance (none at all for assertional
/// content).
pub fn categorize(unit: &StatementUnit) -> Result<StatementCategory, LogicError> {
    let primary = primary_triple(&unit.content, None).ok_or_else(|| LogicError::NoPrimaryTriple(unit.id.clone()))?;
    let subject_kind = resource_kind(&unit.content, &primary.subject);
    let others: Vec<ResourceKind> = quantified_resources(&unit.content)
        .into_iter()
        .filter(|(r, _)| *r != primary.subject)
        .map(|(_, k)| k)
        .collect();
    let only_some = others.iter().all(|k| *k == ResourceKind::SomeInstance);
    match subject_kind {
        ResourceKind::Instance if others.is_empty() => Ok(StatementCategory::Assertional),
        ResourceKind::SomeInstance if only_some => Ok(StatementCategory::Contingent),
        ResourceKind::MostInstances if only_some => Ok(StatementCategory::Prototypical),
        ResourceKind::EveryInstance if only_some => Ok(StatementCategory::Universal),
        _ => Err(LogicError::MixedQuantifiers),
    }
}

fn is_structural_type(class: &Iri) -> bool {
    matches!(
        class.as_str(),
        vocab::SU_SOME_INSTANCE_RESOURCE
            | vocab::SU_EVERY_INSTANCE_RESOURCE
            | vocab::SU_MOST_INSTANCES_RESOURCE
            | vocab::OWL_NAMED_INDIVIDUAL
    )
}

/// Resources replaced when generalizing from `from` to `to`.
fn generalization_map(
    unit: &StatementUnit,
    from: StatementCategory,
    to: StatementCategory,
) -> Result<BTreeMap<Iri, (Iri, ResourceKind)>, LogicError> {
    let content = &unit.content;
    let new_kind = match to {
        StatementCategory::Contingent => ResourceKind::SomeInstance,
        StatementCategory::Prototypical => ResourceKind::MostInstances,
        _ => unreachable!("only weaker categories are targets"),
    };
    let mut map = BTreeMap::new();
    let fresh = |r: &Iri| derived_iri("res", &[unit.id.as_str(), r.as_str(), to.as_str()]);
    match from {
        StatementCategory::Assertional => {
            let mut candidates: BTreeSet<Iri> = BTreeSet::new();
            for q in content {
                let is_type = q.predicate.as_str() == vocab::RDF_TYPE;
                if is_type {
                    if q.object.as_iri().is_some_and(|c| c.as_str() != vocab::OWL_CLASS && !is_structural_type(c)) {
                        candidates.insert(q.subject.clone());
                    }
                } else if q.predicate.as_str() != vocab::RDFS_LABEL {
                    candidates.insert(q.subject.clone());
                }
            }
            for r in candidates {
                if resource_kind(content, &r) == ResourceKind::OntologyClass {
                    continue;
                }
                if target_classes(content, &r).is_empty() {
                    return Err(LogicError::UnclassedInstance(r));
                }
                map.insert(r.clone(), (fresh(&r), new_kind));
            }
        }
        _ => {
            let old_kind = match from {
                StatementCategory::Prototypical => ResourceKind::MostInstances,
                StatementCategory::Universal => ResourceKind::EveryInstance,
                _ => unreachable!(),
            };
            for (r, kind) in quantified_resources(content) {
                if kind == old_kind {
                    map.insert(r.clone(), (fresh(&r), new_kind));
                }
            }
        }
    }
    Ok(map)
}

fn rewrite_content(content: &BTreeSet<Quad>, map: &BTreeMap<Iri, (Iri, ResourceKind)>) -> Vec<Triple> {
    let swap = |iri: &Iri| map.get(iri).map(|(n, _)| n.clone()).unwrap_or_else(|| iri.clone());
    let mut out: BTreeSet<Triple> = BTreeSet::new();
    for q in content {
        if map.contains_key(&q.subject) {
            match q.predicate.as_str() {
                vocab::RDFS_LABEL => continue,
                vocab::RDF_TYPE if q.object.as_iri().is_some_and(is_structural_type) => continue,
                _ => {}
            }
        }
        let object = match &q.object {
            Term::Iri(o) => Term::Iri(swap(o)),
            lit => lit.clone(),
        };
        out.insert(Triple::new(swap(&q.subject), q.predicate.clone(), object));
    }
    for (new, kind) in map.values() {
        let marker = kind.marker_class().expect("quantified target");
        out.insert(Triple::new(new.clone(), vocab::rdf_type(), marker));
    }
    out.into_iter().collect()
}

fn carried_classes(unit: &StatementUnit) -> Vec<Iri> {
    unit.unit_classes
        .iter()
        .filter(|c| StatementCategory::from_class(c).is_none())
        .filter(|c| {
            !matches!(
                c.as_str(),
                vocab::SU_CLASS_AXIOM_UNIT
                    | vocab::SU_NECESSARY_CAUSAL_STATEMENT_UNIT
                    | vocab::SU_SUFFICIENT_CAUSAL_STATEMENT_UNIT
                    | vocab::SU_NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT
                    | vocab::SU_COUNTERFACTUAL_STATEMENT_UNIT
            )
        })
        .cloned()
        .collect()
}

fn existing_twin(kg: &KnowledgeGraph, source: &Iri, rule: &Iri, category: StatementCategory) -> Option<Iri> {
    let src = Term::Iri(source.clone());
    kg.store()
        .match_pattern(None, Some(&vocab::su_derived_from()), Some(&src), None)
        .into_iter()
        .map(|q| q.subject)
        .filter(|t| {
            let meta = meta_graph(t);
            let store = kg.store();
            store.contains(&Quad::new(t.clone(), vocab::su_derived_by(), rule.clone(), meta.clone()))
                && store.contains(&Quad::new(t.clone(), vocab::rdf_type(), category.class(), meta))
        })
        .min()
}

/// Mints (or finds) the entailed twins of a unit. Calling it twice does not
/// create new units.
pub fn derive_entailed(kg: &mut KnowledgeGraph, unit_id: &Iri) -> Result<Vec<StatementUnit>, LogicError> {
    let unit = kg.statement_unit(unit_id)?;
    let category = categorize(&unit)?;
    let mut out = Vec::new();
    for (target, rule) in category.entails() {
        if let Some(existing) = existing_twin(kg, unit_id, &rule, target) {
            out.push(kg.statement_unit(&existing)?);
            continue;
        }
        let map = generalization_map(&unit, category, target)?;
        let content = rewrite_content(&unit.content, &map);
        let mut classes = vec![target.class()];
        classes.extend(carried_classes(&unit));
        let meta = [
            (vocab::su_derived_from(), Term::Iri(unit_id.clone())),
            (vocab::su_derived_by(), Term::Iri(rule.clone())),
        ];
        out.push(kg.mint_statement_unit(&content, &classes, &meta)?);
    }
    Ok(out)
}

/// Whether an assertional unit is an instance of a universal unit: same
/// predicate, and subject/object typed with the universal's target classes.
pub fn check_satisfies(assertional: &StatementUnit, universal: &StatementUnit) -> Result<bool, LogicError> {
    if categorize(assertional)? != StatementCategory::Assertional {
        return Err(LogicError::ShapeMismatch(alloc::format!("{} is not assertional", assertional.id)));
    }
    if categorize(universal)? != StatementCategory::Universal {
        return Err(LogicError::ShapeMismatch(alloc::format!("{} is not universal", universal.id)));
    }
    let a = primary_triple(&assertional.content, None).ok_or_else(|| LogicError::NoPrimaryTriple(assertional.id.clone()))?;
    let u = primary_triple(&universal.content, None).ok_or_else(|| LogicError::NoPrimaryTriple(universal.id.clone()))?;
    if a.predicate != u.predicate {
        return Ok(false);
    }
    let covers = |instance: &Iri, class_holder: &Iri| {
        let needed = target_classes(&universal.content, class_holder);
        !needed.is_empty() && needed.is_subset(&target_classes(&assertional.content, instance))
    };
    if !covers(&a.subject, &u.subject) {
        return Ok(false);
    }
    Ok(match (&a.object, &u.object) {
        (Term::Iri(ao), Term::Iri(uo)) => covers(ao, uo),
        (Term::Literal(al), Term::Literal(ul)) => al.datatype() == ul.datatype(),
        _ => false,
    })
}

/// Records `instance su:satisfies universal` after checking it holds.
pub fn link_satisfies(kg: &mut KnowledgeGraph, instance: &Iri, universal: &Iri) -> Result<(), LogicError> {
    let a = kg.statement_unit(instance)?;
    let u = kg.statement_unit(universal)?;
    if !check_satisfies(&a, &u)? {
        return Err(LogicError::SatisfactionFails { instance: instance.clone(), universal: universal.clone() });
    }
    kg.add_meta(instance, vocab::su_satisfies(), universal.clone())?;
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evidence {
    pub supporting: Vec<Iri>,
    pub contradicting: Vec<Iri>,
}

/// Units linked to `universal` by satisfaction or contradiction links in their meta graphs.
pub fn evidence_for(kg: &KnowledgeGraph, universal: &Iri) -> Evidence {
    let collect = |predicate: Iri| -> Vec<Iri> {
        let target = Term::Iri(universal.clone());
        let ids: BTreeSet<Iri> = kg
            .store()
            .match_pattern(None, Some(&predicate), Some(&target), None)
            .into_iter()
            .filter(|q| q.graph == meta_graph(&q.subject))
            .map(|q| q.subject)
            .collect();
        ids.into_iter().collect()
    };
    Evidence { supporting: collect(vocab::su_satisfies()), contradicting: collect(vocab::su_contradicts()) }
}

#[cfg(test)]
mod tests;

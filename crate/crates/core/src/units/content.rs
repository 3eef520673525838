//! Reading resource kinds and the primary triple out of unit content.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::term::{Iri, Quad, Term, Triple};
use crate::vocab;

/// What a resource in unit content stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResourceKind {
    OntologyClass,
    Instance,
    SomeInstance,
    EveryInstance,
    MostInstances,
}

impl ResourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ResourceKind::OntologyClass => "ontology-class",
            ResourceKind::Instance => "instance",
            ResourceKind::SomeInstance => "some-instance",
            ResourceKind::EveryInstance => "every-instance",
            ResourceKind::MostInstances => "most-instances",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ontology-class" => ResourceKind::OntologyClass,
            "instance" => ResourceKind::Instance,
            "some-instance" => ResourceKind::SomeInstance,
            "every-instance" => ResourceKind::EveryInstance,
            "most-instances" => ResourceKind::MostInstances,
            _ => return None,
        })
    }

    /// The marker class that types a quantified resource.
    pub fn marker_class(self) -> Option<Iri> {
        match self {
            ResourceKind::SomeInstance => Some(vocab::su_some_instance_resource()),
            ResourceKind::EveryInstance => Some(vocab::su_every_instance_resource()),
            ResourceKind::MostInstances => Some(vocab::su_most_instances_resource()),
            _ => None,
        }
    }

    pub fn is_quantified(self) -> bool {
        self.marker_class().is_some()
    }
}

fn is_structural_class(class: &str) -> bool {
    matches!(
        class,
        vocab::SU_SOME_INSTANCE_RESOURCE
            | vocab::SU_EVERY_INSTANCE_RESOURCE
            | vocab::SU_MOST_INSTANCES_RESOURCE
            | vocab::OWL_CLASS
            | vocab::OWL_NAMED_INDIVIDUAL
    )
}

fn types_in<'a>(content: impl IntoIterator<Item = &'a Quad>, resource: &Iri) -> Vec<Iri> {
    content
        .into_iter()
        .filter(|q| &q.subject == resource && q.predicate.as_str() == vocab::RDF_TYPE)
        .filter_map(|q| q.object.as_iri().cloned())
        .collect()
}

/// Kind of `resource` as declared by `rdf:type` quads in `content`.
pub fn resource_kind<'a>(content: impl IntoIterator<Item = &'a Quad>, resource: &Iri) -> ResourceKind {
    let types = types_in(content, resource);
    let has = |c: &str| types.iter().any(|t| t.as_str() == c);
    if has(vocab::SU_EVERY_INSTANCE_RESOURCE) {
        ResourceKind::EveryInstance
    } else if has(vocab::SU_MOST_INSTANCES_RESOURCE) {
        ResourceKind::MostInstances
    } else if has(vocab::SU_SOME_INSTANCE_RESOURCE) {
        ResourceKind::SomeInstance
    } else if has(vocab::OWL_CLASS) {
        ResourceKind::OntologyClass
    } else {
        ResourceKind::Instance
    }
}

/// Ontology classes `resource` is typed with, ignoring quantifier markers.
pub fn target_classes<'a>(content: impl IntoIterator<Item = &'a Quad>, resource: &Iri) -> BTreeSet<Iri> {
    types_in(content, resource).into_iter().filter(|c| !is_structural_class(c.as_str())).collect()
}

/// The triple a label or category is read from.
///
/// With a whitelist, the first content triple (canonical order) whose
/// predicate is whitelisted. Without one, the first non-type, non-label
/// triple whose subject is not the object of another such triple.
pub fn primary_triple<'a>(
    content: impl IntoIterator<Item = &'a Quad>,
    whitelist: Option<&BTreeSet<Iri>>,
) -> Option<Triple> {
    let mut candidates: Vec<&Quad> = content
        .into_iter()
        .filter(|q| !matches!(q.predicate.as_str(), vocab::RDF_TYPE | vocab::RDFS_LABEL))
        .collect();
    candidates.sort();
    if let Some(allowed) = whitelist {
        return candidates.iter().find(|q| allowed.contains(&q.predicate)).map(|q| q.triple());
    }
    let objects: BTreeSet<&Iri> = candidates.iter().filter_map(|q| q.object.as_iri()).collect();
    candidates
        .iter()
        .find(|q| !objects.contains(&q.subject))
        .or(candidates.first())
        .map(|q| q.triple())
}

/// IRIs in subject or object position of non-type content triples, plus any
/// subject typed in the content. Sorted.
pub(crate) fn content_resources<'a>(content: impl IntoIterator<Item = &'a Quad>) -> BTreeSet<Iri> {
    let mut out = BTreeSet::new();
    for q in content {
        out.insert(q.subject.clone());
        if q.predicate.as_str() != vocab::RDF_TYPE {
            if let Term::Iri(o) = &q.object {
                out.insert(o.clone());
            }
        }
    }
    out
}

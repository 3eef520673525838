//! In-memory quad store with set semantics.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::term::{Iri, Quad, Term};

/// Quads grouped into named graphs, indexed by graph, subject and
/// (subject, predicate). Duplicate quads collapse.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadStore {
    quads: BTreeSet<Quad>,
    by_graph: BTreeMap<Iri, BTreeSet<Quad>>,
    by_subject: BTreeMap<Iri, BTreeSet<Quad>>,
    by_subject_predicate: BTreeMap<(Iri, Iri), BTreeSet<Quad>>,
}

impl QuadStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the quad was not already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        if self.quads.contains(&quad) {
            return false;
        }
        self.by_graph.entry(quad.graph.clone()).or_default().insert(quad.clone());
        self.by_subject.entry(quad.subject.clone()).or_default().insert(quad.clone());
        self.by_subject_predicate
            .entry((quad.subject.clone(), quad.predicate.clone()))
            .or_default()
            .insert(quad.clone());
        self.quads.insert(quad)
    }

    pub fn remove(&mut self, quad: &Quad) -> bool {
        if !self.quads.remove(quad) {
            return false;
        }
        remove_indexed(&mut self.by_graph, &quad.graph, quad);
        remove_indexed(&mut self.by_subject, &quad.subject, quad);
        remove_indexed(
            &mut self.by_subject_predicate,
            &(quad.subject.clone(), quad.predicate.clone()),
            quad,
        );
        true
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    /// Iterates in canonical (graph, subject, predicate, object) order.
    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    pub fn graph_names(&self) -> impl Iterator<Item = &Iri> {
        self.by_graph.keys()
    }

    pub fn has_graph(&self, graph: &Iri) -> bool {
        self.by_graph.contains_key(graph)
    }

    /// All quads of one named graph.
    pub fn graph(&self, graph: &Iri) -> impl Iterator<Item = &Quad> {
        self.by_graph.get(graph).into_iter().flatten()
    }

    /// Quads matching every bound position; `None` is a wildcard.
    pub fn match_pattern(
        &self,
        subject: Option<&Iri>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
        graph: Option<&Iri>,
    ) -> Vec<Quad> {
        let candidates: Box<dyn Iterator<Item = &Quad>> = match (subject, predicate, graph) {
            (Some(s), Some(p), _) => Box::new(
                self.by_subject_predicate.get(&(s.clone(), p.clone())).into_iter().flatten(),
            ),
            (Some(s), None, _) => Box::new(self.by_subject.get(s).into_iter().flatten()),
            (None, _, Some(g)) => Box::new(self.by_graph.get(g).into_iter().flatten()),
            (None, _, None) => Box::new(self.quads.iter()),
        };
        candidates
            .filter(|q| subject.is_none_or(|s| &q.subject == s))
            .filter(|q| predicate.is_none_or(|p| &q.predicate == p))
            .filter(|q| object.is_none_or(|o| &q.object == o))
            .filter(|q| graph.is_none_or(|g| &q.graph == g))
            .cloned()
            .collect()
    }

    /// Objects of `subject predicate ?o` in any graph, or in `graph` when given.
    pub fn objects(&self, subject: &Iri, predicate: &Iri, graph: Option<&Iri>) -> Vec<Term> {
        self.match_pattern(Some(subject), Some(predicate), None, graph)
            .into_iter()
            .map(|q| q.object)
            .collect()
    }
}

impl Extend<Quad> for QuadStore {
    fn extend<T: IntoIterator<Item = Quad>>(&mut self, iter: T) {
        for quad in iter {
            self.insert(quad);
        }
    }
}

impl FromIterator<Quad> for QuadStore {
    fn from_iter<T: IntoIterator<Item = Quad>>(iter: T) -> Self {
        let mut store = QuadStore::new();
        store.extend(iter);
        store
    }
}

fn remove_indexed<K: Ord>(index: &mut BTreeMap<K, BTreeSet<Quad>>, key: &K, quad: &Quad) {
    if let Some(set) = index.get_mut(key) {
        set.remove(quad);
        if set.is_empty() {
            index.remove(key);
        }
    }
}

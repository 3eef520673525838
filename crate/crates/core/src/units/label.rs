//! Dynamic labels: human-readable text rendered from a unit's content.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::content::primary_triple;
use super::StatementUnit;
use crate::store::QuadStore;
use crate::term::{Iri, Quad, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("template hole `{0}` has no value in the unit content")]
    UnboundHole(String),
    #[error("template has an unclosed hole")]
    UnclosedHole,
    #[error("unit has no primary triple to label")]
    NoPrimaryTriple,
}

/// Where a hole's predicate path starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Subject,
    Object,
}

/// A pattern such as `{subject} has {quality} of {value} {unit}`.
///
/// `{subject}`, `{predicate}` and `{object}` come from the primary triple;
/// other holes follow a predicate path from an anchor through the content.
/// `{{` and `}}` are literal braces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelTemplate {
    pub shape_id: Iri,
    pub pattern: String,
    pub paths: BTreeMap<String, (Anchor, Vec<Iri>)>,
}

impl LabelTemplate {
    pub fn new(shape_id: Iri, pattern: impl Into<String>) -> Self {
        Self { shape_id, pattern: pattern.into(), paths: BTreeMap::new() }
    }

    pub fn with_path(mut self, hole: impl Into<String>, anchor: Anchor, path: Vec<Iri>) -> Self {
        self.paths.insert(hole.into(), (anchor, path));
        self
    }

    /// Hole names in order of appearance.
    pub fn holes(&self) -> Result<Vec<String>, LabelError> {
        let mut holes = Vec::new();
        for piece in split_pattern(&self.pattern)? {
            if let Piece::Hole(h) = piece {
                holes.push(h.to_string());
            }
        }
        Ok(holes)
    }
}

enum Piece<'a> {
    Text(&'a str),
    Hole(&'a str),
}

fn split_pattern(pattern: &str) -> Result<Vec<Piece<'_>>, LabelError> {
    let mut pieces = Vec::new();
    let mut rest = pattern;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("{{") {
            pieces.push(Piece::Text("{"));
            rest = r;
        } else if let Some(r) = rest.strip_prefix("}}") {
            pieces.push(Piece::Text("}"));
            rest = r;
        } else if let Some(r) = rest.strip_prefix('{') {
            let end = r.find('}').ok_or(LabelError::UnclosedHole)?;
            pieces.push(Piece::Hole(r[..end].trim()));
            rest = &r[end + 1..];
        } else {
            let end = rest.find(['{', '}']).map(|i| if i == 0 { 1 } else { i }).unwrap_or(rest.len());
            pieces.push(Piece::Text(&rest[..end]));
            rest = &rest[end..];
        }
    }
    Ok(pieces)
}

/// Renders `template` for `unit`. Resource values are shown by label, never
/// as bracketed IRIs.
pub fn render_dynamic_label(unit: &StatementUnit, template: &LabelTemplate, store: &QuadStore) -> Result<String, LabelError> {
    let primary = primary_triple(&unit.content, None).ok_or(LabelError::NoPrimaryTriple)?;
    let mut out = String::new();
    for piece in split_pattern(&template.pattern)? {
        match piece {
            Piece::Text(t) => out.push_str(t),
            Piece::Hole(h) => {
                let value = match h {
                    "subject" => Term::Iri(primary.subject.clone()),
                    "predicate" => Term::Iri(primary.predicate.clone()),
                    "object" => primary.object.clone(),
                    _ => {
                        let (anchor, path) =
                            template.paths.get(h).ok_or_else(|| LabelError::UnboundHole(h.to_string()))?;
                        let start = match anchor {
                            Anchor::Subject => Term::Iri(primary.subject.clone()),
                            Anchor::Object => primary.object.clone(),
                        };
                        follow(&unit.content, start, path).ok_or_else(|| LabelError::UnboundHole(h.to_string()))?
                    }
                };
                match value {
                    Term::Iri(iri) => out.push_str(&label_of(store, &iri)),
                    Term::Literal(lit) => out.push_str(lit.lexical()),
                }
            }
        }
    }
    Ok(out)
}

fn follow<'a>(content: impl IntoIterator<Item = &'a Quad> + Clone, start: Term, path: &[Iri]) -> Option<Term> {
    let mut current = start;
    for step in path {
        let node = current.as_iri()?.clone();
        let mut next: Vec<&Quad> = content
            .clone()
            .into_iter()
            .filter(|q| q.subject == node && &q.predicate == step)
            .filter(|q| {
                step.as_str() != vocab::RDF_TYPE
                    || q.object.as_iri().is_some_and(|c| {
                        !matches!(
                            c.as_str(),
                            vocab::SU_SOME_INSTANCE_RESOURCE
                                | vocab::SU_EVERY_INSTANCE_RESOURCE
                                | vocab::SU_MOST_INSTANCES_RESOURCE
                                | vocab::OWL_NAMED_INDIVIDUAL
                                | vocab::OWL_CLASS
                        )
                    })
            })
            .collect();
        next.sort();
        current = next.first()?.object.clone();
    }
    Some(current)
}

/// An `rdfs:label` from anywhere in the store (English, then untagged, then
/// any), else the local name.
pub(crate) fn label_of(store: &QuadStore, iri: &Iri) -> String {
    let labels: Vec<Term> = store.objects(iri, &vocab::rdfs_label(), None);
    let lits: Vec<_> = labels.iter().filter_map(Term::as_literal).collect();
    let pick = lits
        .iter()
        .filter(|l| l.langtag().is_some_and(|t| t.eq_ignore_ascii_case("en")))
        .min()
        .or_else(|| lits.iter().filter(|l| l.langtag().is_none()).min())
        .or_else(|| lits.iter().min());
    match pick {
        Some(l) => l.lexical().to_string(),
        None => iri.local_name().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_splitting() {
        let t = LabelTemplate::new(Iri::from_static("urn:shape"), "{{x}} {a} and {b}");
        assert_eq!(t.holes().unwrap(), alloc::vec!["a".to_string(), "b".to_string()]);
        let bad = LabelTemplate::new(Iri::from_static("urn:shape"), "{a");
        assert_eq!(bad.holes(), Err(LabelError::UnclosedHole));
    }
}

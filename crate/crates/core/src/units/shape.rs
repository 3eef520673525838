//! Declarative content shapes and validation against them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::content::{content_resources, primary_triple, resource_kind, target_classes, ResourceKind};
use super::StatementUnit;
use crate::term::{Iri, Quad, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("shape {0} has an empty predicate whitelist")]
    EmptyWhitelist(Iri),
}

/// Required form of a literal or resource in object position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectKind {
    Resource(ResourceKind),
    /// A literal, optionally with a fixed datatype.
    Literal(Option<Iri>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub shape_id: Iri,
    pub subject_kind: ResourceKind,
    pub subject_class: Option<Iri>,
    pub predicate_whitelist: BTreeSet<Iri>,
    pub object_kind: ObjectKind,
    pub object_class: Option<Iri>,
    pub required_meta_keys: BTreeSet<Iri>,
}

impl Shape {
    pub fn new(
        shape_id: Iri,
        subject_kind: ResourceKind,
        predicate_whitelist: impl IntoIterator<Item = Iri>,
        object_kind: ObjectKind,
    ) -> Result<Self, ShapeError> {
        let predicate_whitelist: BTreeSet<Iri> = predicate_whitelist.into_iter().collect();
        if predicate_whitelist.is_empty() {
            return Err(ShapeError::EmptyWhitelist(shape_id));
        }
        Ok(Self {
            shape_id,
            subject_kind,
            subject_class: None,
            predicate_whitelist,
            object_kind,
            object_class: None,
            required_meta_keys: BTreeSet::new(),
        })
    }

    pub fn with_subject_class(mut self, class: Iri) -> Self {
        self.subject_class = Some(class);
        self
    }

    pub fn with_object_class(mut self, class: Iri) -> Self {
        self.object_class = Some(class);
        self
    }

    pub fn with_required_meta(mut self, keys: impl IntoIterator<Item = Iri>) -> Self {
        self.required_meta_keys.extend(keys);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constraint {
    Predicate,
    SubjectKind,
    SubjectClass,
    ObjectKind,
    ObjectClass,
    QuantifierClass,
    MetaKey,
}

impl Constraint {
    pub fn as_str(self) -> &'static str {
        match self {
            Constraint::Predicate => "predicate",
            Constraint::SubjectKind => "subject-kind",
            Constraint::SubjectClass => "subject-class",
            Constraint::ObjectKind => "object-kind",
            Constraint::ObjectClass => "object-class",
            Constraint::QuantifierClass => "quantifier-class",
            Constraint::MetaKey => "meta-key",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The offending quad, when one exists.
    pub quad: Option<Quad>,
    pub constraint: Constraint,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub unit: Iri,
    pub shape: Iri,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn conforms(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a statement unit's content (and required meta keys) against `shape`.
pub fn validate_shape(unit: &StatementUnit, shape: &Shape) -> ValidationReport {
    let mut violations = Vec::new();
    let content = &unit.content;

    let primary = primary_triple(content, Some(&shape.predicate_whitelist));
    match primary {
        None => violations.push(Violation {
            quad: None,
            constraint: Constraint::Predicate,
            detail: "no content triple uses a whitelisted predicate".into(),
        }),
        Some(ref t) => {
            let quad = t.clone().in_graph(unit.id.clone());
            let subject_kind = resource_kind(content, &t.subject);
            if subject_kind != shape.subject_kind {
                violations.push(Violation {
                    quad: Some(quad.clone()),
                    constraint: Constraint::SubjectKind,
                    detail: format!("subject is {}, shape requires {}", subject_kind.as_str(), shape.subject_kind.as_str()),
                });
            }
            if let Some(class) = &shape.subject_class {
                if !target_classes(content, &t.subject).contains(class) {
                    violations.push(Violation {
                        quad: Some(quad.clone()),
                        constraint: Constraint::SubjectClass,
                        detail: format!("subject is not typed {class}"),
                    });
                }
            }
            match (&shape.object_kind, &t.object) {
                (ObjectKind::Literal(dt), Term::Literal(lit)) => {
                    if let Some(dt) = dt {
                        if lit.datatype() != Some(dt) {
                            violations.push(Violation {
                                quad: Some(quad.clone()),
                                constraint: Constraint::ObjectKind,
                                detail: format!("literal datatype must be {dt}"),
                            });
                        }
                    }
                }
                (ObjectKind::Literal(_), Term::Iri(_)) => violations.push(Violation {
                    quad: Some(quad.clone()),
                    constraint: Constraint::ObjectKind,
                    detail: "object must be a literal".into(),
                }),
                (ObjectKind::Resource(_), Term::Literal(_)) => violations.push(Violation {
                    quad: Some(quad.clone()),
                    constraint: Constraint::ObjectKind,
                    detail: "object must be a resource".into(),
                }),
                (ObjectKind::Resource(kind), Term::Iri(o)) => {
                    let actual = resource_kind(content, o);
                    if actual != *kind {
                        violations.push(Violation {
                            quad: Some(quad.clone()),
                            constraint: Constraint::ObjectKind,
                            detail: format!("object is {}, shape requires {}", actual.as_str(), kind.as_str()),
                        });
                    }
                    if let Some(class) = &shape.object_class {
                        if !target_classes(content, o).contains(class) {
                            violations.push(Violation {
                                quad: Some(quad.clone()),
                                constraint: Constraint::ObjectClass,
                                detail: format!("object is not typed {class}"),
                            });
                        }
                    }
                }
            }
        }
    }

    for r in content_resources(content) {
        if resource_kind(content, &r).is_quantified() && target_classes(content, &r).is_empty() {
            violations.push(Violation {
                quad: None,
                constraint: Constraint::QuantifierClass,
                detail: format!("quantified resource {r} has no target class"),
            });
        }
    }

    for key in &shape.required_meta_keys {
        let present = unit.meta.iter().any(|q| q.subject == unit.id && &q.predicate == key);
        if !present {
            violations.push(Violation {
                quad: None,
                constraint: Constraint::MetaKey,
                detail: format!("missing metadata {key}"),
            });
        }
    }

    ValidationReport { unit: unit.id.clone(), shape: shape.shape_id.clone(), violations }
}

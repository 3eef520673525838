//! RDF terms restricted to what the store needs: IRIs and literals.
//!
//! There are no blank nodes. Every node a semantic unit talks about is an
//! addressable IRI.

use alloc::string::String;
use alloc::sync::Arc;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI must not be empty")]
    EmptyIri,
    #[error("IRI `{0}` contains a forbidden character")]
    ForbiddenChar(String),
    #[error("IRI `{0}` is not absolute (no scheme)")]
    NotAbsolute(String),
    #[error("invalid language tag `{0}`")]
    InvalidLangTag(String),
}

/// An absolute IRI. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if value.chars().any(is_forbidden_iri_char) {
            return Err(TermError::ForbiddenChar(value.into()));
        }
        if !has_scheme(value) {
            return Err(TermError::NotAbsolute(value.into()));
        }
        Ok(Self(Arc::from(value)))
    }

    /// Builds an IRI from a trusted constant. Validity is only checked in debug builds.
    pub fn from_static(value: &'static str) -> Self {
        debug_assert!(Self::new(value).is_ok(), "invalid static IRI {value}");
        Self(Arc::from(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fragment after the last `#`, `/` or `:`; falls back to the whole IRI.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        let trimmed = s.trim_end_matches(['/', '#']);
        match trimmed.rfind(['#', '/', ':']) {
            Some(idx) if idx + 1 < trimmed.len() => &trimmed[idx + 1..],
            _ => s,
        }
    }

    /// Appends a suffix verbatim, e.g. `#meta`.
    pub fn with_suffix(&self, suffix: &str) -> Iri {
        let mut s = String::with_capacity(self.0.len() + suffix.len());
        s.push_str(&self.0);
        s.push_str(suffix);
        Iri::new(s).expect("suffix keeps IRI valid")
    }
}

fn is_forbidden_iri_char(c: char) -> bool {
    c.is_whitespace()
        || c.is_control()
        || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

fn has_scheme(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A literal value. A datatype and a language tag never occur together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    annotation: LiteralAnnotation,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum LiteralAnnotation {
    Plain,
    Typed(Iri),
    Lang(String),
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Self { lexical: lexical.into(), annotation: LiteralAnnotation::Plain }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Self { lexical: lexical.into(), annotation: LiteralAnnotation::Typed(datatype) }
    }

    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Result<Self, TermError> {
        let tag = tag.into();
        if !is_valid_lang_tag(&tag) {
            return Err(TermError::InvalidLangTag(tag));
        }
        Ok(Self { lexical: lexical.into(), annotation: LiteralAnnotation::Lang(tag) })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Option<&Iri> {
        match &self.annotation {
            LiteralAnnotation::Typed(dt) => Some(dt),
            _ => None,
        }
    }

    pub fn langtag(&self) -> Option<&str> {
        match &self.annotation {
            LiteralAnnotation::Lang(tag) => Some(tag),
            _ => None,
        }
    }
}

pub(crate) fn is_valid_lang_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let Some(primary) = parts.next() else { return false };
    !primary.is_empty()
        && primary.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// Object-position term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

/// A triple without a graph name; the shape of unit content before minting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Self { subject, predicate, object: object.into() }
    }

    pub fn in_graph(self, graph: Iri) -> Quad {
        Quad { subject: self.subject, predicate: self.predicate, object: self.object, graph }
    }
}

/// A triple plus its graph name. Ordered by (graph, subject, predicate, object).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
    pub graph: Iri,
}

impl Quad {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>, graph: Iri) -> Self {
        Self { subject, predicate, object: object.into(), graph }
    }

    pub fn triple(&self) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.predicate.clone(),
            object: self.object.clone(),
        }
    }

    pub fn regraph(&self, graph: &Iri) -> Quad {
        Quad { graph: graph.clone(), ..self.clone() }
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graph
            .cmp(&other.graph)
            .then_with(|| self.subject.cmp(&other.subject))
            .then_with(|| self.predicate.cmp(&other.predicate))
            .then_with(|| self.object.cmp(&other.object))
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

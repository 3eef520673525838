use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CausalError, CausalNetwork, Edge};
use crate::id::derived_iri;
use crate::nquads::write_term;
use crate::store::QuadStore;
use crate::term::{Iri, Literal, Quad, Term};
use crate::units::{meta_graph, CompoundUnit, KnowledgeGraph};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PerspectiveKind {
    Causal,
    Contextual,
    BackDoor,
    FrontDoor,
    InstrumentalVariable,
}

impl PerspectiveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PerspectiveKind::Causal => "causal",
            PerspectiveKind::Contextual => "contextual",
            PerspectiveKind::BackDoor => "back-door",
            PerspectiveKind::FrontDoor => "front-door",
            PerspectiveKind::InstrumentalVariable => "instrumental-variable",
        }
    }

    pub fn class(self) -> Iri {
        match self {
            PerspectiveKind::Causal => vocab::su_causal_perspective_unit(),
            PerspectiveKind::Contextual => vocab::su_contextual_causal_perspective_unit(),
            PerspectiveKind::BackDoor => vocab::su_back_door_causal_perspective_unit(),
            PerspectiveKind::FrontDoor => vocab::su_front_door_causal_perspective_unit(),
            PerspectiveKind::InstrumentalVariable => vocab::su_instrumental_variable_causal_perspective_unit(),
        }
    }
}

/// Keeps statements whose meta graph holds every listed (predicate, value) pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContextFilter {
    pub required: Vec<(Iri, Term)>,
}

impl ContextFilter {
    pub fn new(required: Vec<(Iri, Term)>) -> Self {
        Self { required }
    }

    pub fn admits(&self, store: &QuadStore, unit: &Iri) -> bool {
        let meta = meta_graph(unit);
        self.required
            .iter()
            .all(|(p, v)| store.contains(&Quad::new(unit.clone(), p.clone(), v.clone(), meta.clone())))
    }
}

/// A simple path between the focus variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PerspectivePath {
    pub nodes: Vec<Iri>,
    /// Statement unit behind each step.
    pub units: Vec<Iri>,
    /// Whether each step follows its edge's direction.
    pub forward: Vec<bool>,
    /// All steps forward from cause to effect.
    pub causal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerspectiveUnit {
    pub id: Iri,
    pub kind: PerspectiveKind,
    pub focus_cause: Iri,
    pub focus_effect: Iri,
    pub member_statements: Vec<Iri>,
    pub paths: Vec<PerspectivePath>,
    pub annotations: Vec<(Iri, Term)>,
}

impl PerspectiveUnit {
    /// Re-keys the perspective after kind or annotations changed.
    pub fn refresh_id(&mut self) {
        let mut parts: Vec<String> = Vec::new();
        parts.push(self.kind.as_str().into());
        parts.push(self.focus_cause.as_str().into());
        parts.push(self.focus_effect.as_str().into());
        for m in &self.member_statements {
            parts.push(m.as_str().into());
        }
        let mut pairs: Vec<String> = self
            .annotations
            .iter()
            .map(|(p, v)| {
                let mut s = String::from(p.as_str());
                s.push(' ');
                write_term(&mut s, v);
                s
            })
            .collect();
        pairs.sort();
        parts.extend(pairs);
        let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
        self.id = derived_iri("perspective", &refs);
    }
}

/// All simple paths (ignoring direction) from `cause` to `effect` over `edges`.
pub(crate) fn simple_paths(edges: &[&Edge], cause: &Iri, effect: &Iri) -> Vec<PerspectivePath> {
    let mut out = Vec::new();
    let mut nodes = alloc::vec![cause.clone()];
    let mut units = Vec::new();
    let mut forward = Vec::new();
    walk(edges, effect, &mut nodes, &mut units, &mut forward, &mut out);
    out.sort();
    out
}

fn walk(
    edges: &[&Edge],
    effect: &Iri,
    nodes: &mut Vec<Iri>,
    units: &mut Vec<Iri>,
    forward: &mut Vec<bool>,
    out: &mut Vec<PerspectivePath>,
) {
    let here = nodes.last().expect("path is never empty").clone();
    if &here == effect {
        out.push(PerspectivePath {
            nodes: nodes.clone(),
            units: units.clone(),
            forward: forward.clone(),
            causal: forward.iter().all(|f| *f),
        });
        return;
    }
    for e in edges {
        let (next, fwd) = if e.source == here {
            (&e.target, true)
        } else if e.target == here {
            (&e.source, false)
        } else {
            continue;
        };
        if nodes.contains(next) {
            continue;
        }
        nodes.push(next.clone());
        units.push(e.unit.clone());
        forward.push(fwd);
        walk(edges, effect, nodes, units, forward, out);
        nodes.pop();
        units.pop();
        forward.pop();
    }
}

/// The subnetwork of every statement on a simple path between the focus
/// variables. With a filter, statements failing it are dropped first and the
/// kind becomes contextual.
pub fn extract_perspective(
    net: &CausalNetwork,
    cause: &Iri,
    effect: &Iri,
    context: Option<&ContextFilter>,
    store: &QuadStore,
) -> Result<PerspectiveUnit, CausalError> {
    for v in [cause, effect] {
        if !net.has_variable(v) {
            return Err(CausalError::UnknownVariable(v.clone()));
        }
    }
    let edges: Vec<&Edge> = net.edges.iter().filter(|e| context.is_none_or(|c| c.admits(store, &e.unit))).collect();
    let paths = if cause == effect { Vec::new() } else { simple_paths(&edges, cause, effect) };
    let members: BTreeSet<Iri> = paths.iter().flat_map(|p| p.units.iter().cloned()).collect();
    let mut annotations = Vec::new();
    if let Some(c) = context {
        for (p, v) in &c.required {
            let mut s = String::from(p.as_str());
            s.push(' ');
            write_term(&mut s, v);
            annotations.push((vocab::su_context_filter(), Term::Literal(Literal::simple(s))));
        }
    }
    let mut unit = PerspectiveUnit {
        id: vocab::su_causal_perspective_unit(),
        kind: if context.is_some() { PerspectiveKind::Contextual } else { PerspectiveKind::Causal },
        focus_cause: cause.clone(),
        focus_effect: effect.clone(),
        member_statements: members.into_iter().collect(),
        paths,
        annotations,
    };
    unit.refresh_id();
    Ok(unit)
}

fn path_literal(path: &PerspectivePath) -> Literal {
    let mut s = String::new();
    for (i, n) in path.nodes.iter().enumerate() {
        if i > 0 {
            s.push_str(if path.forward[i - 1] { " -> " } else { " <- " });
        }
        s.push_str(n.as_str());
    }
    Literal::simple(s)
}

/// Stores a perspective as a compound unit under its derived identifier.
pub fn persist_perspective(kg: &mut KnowledgeGraph, p: &PerspectiveUnit) -> Result<CompoundUnit, CausalError> {
    let mut meta = alloc::vec![
        (vocab::su_focus_cause(), Term::Iri(p.focus_cause.clone())),
        (vocab::su_focus_effect(), Term::Iri(p.focus_effect.clone())),
    ];
    for path in &p.paths {
        let key = if path.causal { vocab::su_causal_path() } else { vocab::su_biasing_path() };
        meta.push((key, Term::Literal(path_literal(path))));
    }
    meta.extend(p.annotations.iter().cloned());
    Ok(kg.insert_compound_unit_with_id(&p.id, &p.member_statements, &[p.kind.class()], &meta)?)
}

use alloc::vec::Vec;

use super::{check_acyclic, CausalError, CausalNetwork, Edge};
use crate::id::derived_iri;
use crate::term::{Iri, Term};
use crate::units::{CompoundUnit, KnowledgeGraph};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JunctionKind {
    Chain,
    Fork,
    Collider,
}

impl JunctionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            JunctionKind::Chain => "chain",
            JunctionKind::Fork => "fork",
            JunctionKind::Collider => "collider",
        }
    }

    pub fn class(self) -> Iri {
        match self {
            JunctionKind::Chain => vocab::su_chain_junction_unit(),
            JunctionKind::Fork => vocab::su_fork_junction_unit(),
            JunctionKind::Collider => vocab::su_collider_junction_unit(),
        }
    }
}

/// Two edges meeting at `v2`.
///
/// Chain: v1 -> v2 -> v3. Fork: v1 <- v2 -> v3. Collider: v1 -> v2 <- v3.
/// For forks and colliders v1 sorts before v3.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Junction {
    pub id: Iri,
    pub kind: JunctionKind,
    pub v1: Iri,
    pub v2: Iri,
    pub v3: Iri,
    /// Statement units of the (v1, v2) and (v2, v3) edges.
    pub member_edges: [Iri; 2],
}

fn junction_of<'a>(a: &'a Edge, b: &'a Edge) -> Option<(JunctionKind, &'a Edge, &'a Edge)> {
    let ends_a = [&a.source, &a.target];
    let shared: Vec<&Iri> = ends_a.into_iter().filter(|v| *v == &b.source || *v == &b.target).collect();
    if shared.len() != 1 || a.source == a.target || b.source == b.target {
        return None;
    }
    let v = shared[0];
    if &a.target == v && &b.source == v {
        Some((JunctionKind::Chain, a, b))
    } else if &b.target == v && &a.source == v {
        Some((JunctionKind::Chain, b, a))
    } else if &a.source == v {
        let (x, y) = if a.target <= b.target { (a, b) } else { (b, a) };
        Some((JunctionKind::Fork, x, y))
    } else {
        let (x, y) = if a.source <= b.source { (a, b) } else { (b, a) };
        Some((JunctionKind::Collider, x, y))
    }
}

/// Every pair of edges sharing exactly one variable, classified by the
/// arrow orientation at the shared variable. Not persisted.
pub fn classify_junctions(net: &CausalNetwork) -> Result<Vec<Junction>, CausalError> {
    let report = check_acyclic(net);
    if let Some(cycle) = report.cycle {
        return Err(CausalError::CyclicGraph(cycle));
    }
    let edges: Vec<&Edge> = net.edges.iter().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let Some((kind, first, second)) = junction_of(edges[i], edges[j]) else { continue };
            let (v1, v2, v3) = match kind {
                JunctionKind::Chain => (&first.source, &first.target, &second.target),
                JunctionKind::Fork => (&first.target, &first.source, &second.target),
                JunctionKind::Collider => (&first.source, &first.target, &second.source),
            };
            let id = derived_iri(
                "junction",
                &[kind.as_str(), v1.as_str(), v2.as_str(), v3.as_str(), first.unit.as_str(), second.unit.as_str()],
            );
            out.push(Junction {
                id,
                kind,
                v1: v1.clone(),
                v2: v2.clone(),
                v3: v3.clone(),
                member_edges: [first.unit.clone(), second.unit.clone()],
            });
        }
    }
    out.sort_by(|a, b| (&a.v2, a.kind, &a.v1, &a.v3, &a.id).cmp(&(&b.v2, b.kind, &b.v1, &b.v3, &b.id)));
    Ok(out)
}

/// Stores a junction as a compound unit under its derived identifier.
pub fn persist_junction(kg: &mut KnowledgeGraph, junction: &Junction) -> Result<CompoundUnit, CausalError> {
    let meta = [
        (vocab::su_junction_first(), Term::Iri(junction.v1.clone())),
        (vocab::su_junction_middle(), Term::Iri(junction.v2.clone())),
        (vocab::su_junction_last(), Term::Iri(junction.v3.clone())),
    ];
    Ok(kg.insert_compound_unit_with_id(&junction.id, &junction.member_edges, &[junction.kind.class()], &meta)?)
}

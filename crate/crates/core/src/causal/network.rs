use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{causal_statement, CausalError, CausalStatement, Mode, Polarity};
use crate::logic::StatementCategory;
use crate::term::{Iri, Quad, Term, Triple};
use crate::units::{KnowledgeGraph, ResourceKind};
use crate::vocab;

/// A directed edge between variable classes, backed by one statement unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: Iri,
    pub target: Iri,
    pub unit: Iri,
    pub predicate: Iri,
    pub polarity: Polarity,
}

/// In composed content, `replaced` (from `in_unit`) was rewritten to `by`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Substitution {
    pub in_unit: Iri,
    pub replaced: Iri,
    pub by: Iri,
}

/// Variables are nodes identified by their class IRI.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CausalNetwork {
    pub id: Option<Iri>,
    pub statements: Vec<CausalStatement>,
    pub variables: BTreeSet<Iri>,
    pub edges: BTreeSet<Edge>,
    /// Correlation statements alongside the causal ones.
    pub correlations: Vec<CausalStatement>,
    pub correlation_edges: BTreeSet<Edge>,
    /// (causal unit, correlation unit) pairs over the same two variables.
    pub interpretations: Vec<(Iri, Iri)>,
    pub substitutions: Vec<Substitution>,
    /// Merged content for composed chains.
    pub composite: Vec<Triple>,
}

impl CausalNetwork {
    pub fn statement(&self, unit: &Iri) -> Option<&CausalStatement> {
        self.statements.iter().find(|s| &s.unit_id == unit)
    }

    pub fn has_variable(&self, v: &Iri) -> bool {
        self.variables.contains(v)
    }

    pub fn parents(&self, v: &Iri) -> BTreeSet<Iri> {
        self.edges.iter().filter(|e| &e.target == v).map(|e| e.source.clone()).collect()
    }
}

fn edge_of(st: &CausalStatement) -> Edge {
    Edge {
        source: st.source.variable_class.clone(),
        target: st.target.variable_class.clone(),
        unit: st.unit_id.clone(),
        predicate: st.predicate.clone(),
        polarity: st.polarity(),
    }
}

/// Whether `second` can follow `first` in a chain.
pub fn composable(first: &CausalStatement, second: &CausalStatement) -> bool {
    first.category == StatementCategory::Universal
        && second.category == StatementCategory::Universal
        && first.mode == second.mode
        && first.target.variable_class == second.source.variable_class
        && (first.target.kind != ResourceKind::SomeInstance || second.source.kind == ResourceKind::EveryInstance)
}

/// Joins two statements into a three-variable chain. The every-instance
/// source resource of `second` is replaced by the some-instance target of
/// `first` in the composite content.
pub fn compose_chain(
    kg: &KnowledgeGraph,
    first: &CausalStatement,
    second: &CausalStatement,
) -> Result<CausalNetwork, CausalError> {
    if !composable(first, second) {
        return Err(CausalError::NotComposable(format!(
            "target {} of {} does not feed source {} of {}",
            first.target.variable_class, first.unit_id, second.source.variable_class, second.unit_id
        )));
    }
    let a = kg.statement_unit(&first.unit_id)?;
    let b = kg.statement_unit(&second.unit_id)?;
    let replaced = second.source.resource.clone();
    let by = first.target.resource.clone();
    let swap = |i: &Iri| if *i == replaced { by.clone() } else { i.clone() };
    let mut composite: BTreeSet<Triple> = a.content.iter().map(Quad::triple).collect();
    for q in &b.content {
        if q.subject == replaced && q.predicate.as_str() == vocab::RDF_TYPE {
            continue;
        }
        let object = match &q.object {
            Term::Iri(o) => Term::Iri(swap(o)),
            lit => lit.clone(),
        };
        composite.insert(Triple::new(swap(&q.subject), q.predicate.clone(), object));
    }
    let mut net = network_from(vec_of(first, second), Vec::new());
    net.substitutions.push(Substitution { in_unit: second.unit_id.clone(), replaced: replaced.clone(), by: by.clone() });
    net.composite = composite.into_iter().collect();
    Ok(net)
}

fn vec_of(a: &CausalStatement, b: &CausalStatement) -> Vec<CausalStatement> {
    alloc::vec![a.clone(), b.clone()]
}

fn network_from(causal: Vec<CausalStatement>, correlations: Vec<CausalStatement>) -> CausalNetwork {
    let dedup = |list: Vec<CausalStatement>| {
        let mut by_id: BTreeMap<Iri, CausalStatement> = BTreeMap::new();
        for s in list {
            by_id.entry(s.unit_id.clone()).or_insert(s);
        }
        by_id.into_values().collect::<Vec<_>>()
    };
    let statements = dedup(causal);
    let correlations = dedup(correlations);
    let edges: BTreeSet<Edge> = statements.iter().map(edge_of).collect();
    let correlation_edges: BTreeSet<Edge> = correlations.iter().map(edge_of).collect();
    let mut variables = BTreeSet::new();
    for e in edges.iter().chain(correlation_edges.iter()) {
        variables.insert(e.source.clone());
        variables.insert(e.target.clone());
    }
    let mut interpretations = Vec::new();
    for c in &statements {
        let pair: BTreeSet<&Iri> = [&c.source.variable_class, &c.target.variable_class].into_iter().collect();
        for r in &correlations {
            let other: BTreeSet<&Iri> = [&r.source.variable_class, &r.target.variable_class].into_iter().collect();
            if pair == other {
                interpretations.push((c.unit_id.clone(), r.unit_id.clone()));
            }
        }
    }
    CausalNetwork {
        id: None,
        statements,
        variables,
        edges,
        correlations,
        correlation_edges,
        interpretations,
        substitutions: Vec::new(),
        composite: Vec::new(),
    }
}

/// Merges universal statements into one map; nodes merge by variable class.
pub fn build_causal_map(statements: &[CausalStatement]) -> Result<CausalNetwork, CausalError> {
    if let Some(s) = statements.iter().find(|s| s.category != StatementCategory::Universal) {
        return Err(CausalError::NotUniversal(s.unit_id.clone()));
    }
    let (causal, correlations): (Vec<_>, Vec<_>) =
        statements.iter().cloned().partition(|s| s.mode == Mode::Causal);
    Ok(network_from(causal, correlations))
}

/// Mints the network as a causal-network compound unit (plus a
/// correlation-network compound when correlations are present) and records
/// causal-interpretation links.
pub fn persist_causal_map(kg: &mut KnowledgeGraph, net: &mut CausalNetwork) -> Result<Iri, CausalError> {
    let members: Vec<Iri> = net.statements.iter().map(|s| s.unit_id.clone()).collect();
    let correlation_members: Vec<Iri> = net.correlations.iter().map(|s| s.unit_id.clone()).collect();
    let id = if members.is_empty() {
        kg.mint_compound_unit(&correlation_members, &[vocab::su_correlation_network_compound_unit()])?.id
    } else {
        let id = kg.mint_compound_unit(&members, &[vocab::su_causal_network_compound_unit()])?.id;
        if !correlation_members.is_empty() {
            let corr = kg.mint_compound_unit(&correlation_members, &[vocab::su_correlation_network_compound_unit()])?.id;
            kg.add_meta(&id, vocab::su_causal_interpretation_of(), corr)?;
        }
        id
    };
    for (causal, correlation) in &net.interpretations {
        kg.add_meta(causal, vocab::su_causal_interpretation_of(), correlation.clone())?;
    }
    net.id = Some(id.clone());
    Ok(id)
}

/// Rebuilds a network from a stored causal-network (or correlation-network) compound unit.
pub fn load_causal_map(kg: &KnowledgeGraph, id: &Iri) -> Result<CausalNetwork, CausalError> {
    let compound = kg.compound_unit(id)?;
    let mut statements = Vec::new();
    for m in &compound.members {
        statements.push(causal_statement(kg, m)?);
    }
    for linked in compound.meta_values(&vocab::su_causal_interpretation_of()) {
        if let Some(corr) = linked.as_iri() {
            for m in kg.compound_unit(corr)?.members {
                statements.push(causal_statement(kg, &m)?);
            }
        }
    }
    let mut net = build_causal_map(&statements)?;
    net.id = Some(id.clone());
    Ok(net)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acyclicity {
    pub acyclic: bool,
    /// A witness cycle, first node repeated at the end.
    pub cycle: Option<Vec<Iri>>,
}

/// Cycle detection over directed causal edges.
pub fn check_acyclic(net: &CausalNetwork) -> Acyclicity {
    let mut children: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for e in &net.edges {
        children.entry(&e.source).or_default().insert(&e.target);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    let mut mark: BTreeMap<&Iri, Mark> = net.variables.iter().map(|v| (v, Mark::Fresh)).collect();
    for root in &net.variables {
        if mark[root] != Mark::Fresh {
            continue;
        }
        // Iterative DFS; `stack` holds the active path with each node's pending children.
        let mut stack: Vec<(&Iri, Vec<&Iri>)> = Vec::new();
        mark.insert(root, Mark::Active);
        stack.push((root, children.get(root).map(|c| c.iter().rev().copied().collect()).unwrap_or_default()));
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(next) => match mark[next] {
                    Mark::Active => {
                        let start = stack.iter().position(|(n, _)| *n == next).expect("active node is on the stack");
                        let mut cycle: Vec<Iri> = stack[start..].iter().map(|(n, _)| (*n).clone()).collect();
                        cycle.push(next.clone());
                        return Acyclicity { acyclic: false, cycle: Some(cycle) };
                    }
                    Mark::Fresh => {
                        mark.insert(next, Mark::Active);
                        let kids = children.get(next).map(|c| c.iter().rev().copied().collect()).unwrap_or_default();
                        stack.push((next, kids));
                    }
                    Mark::Done => {}
                },
                None => {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    Acyclicity { acyclic: true, cycle: None }
}

//! Correlation and causal statement units, and the networks built from them.

mod junction;
mod network;
mod perspective;

pub use junction::{classify_junctions, persist_junction, Junction, JunctionKind};
pub use network::{
    build_causal_map, check_acyclic, compose_chain, composable, load_causal_map, persist_causal_map, Acyclicity,
    CausalNetwork, Edge, Substitution,
};
pub use perspective::{
    extract_perspective, persist_perspective, ContextFilter, PerspectiveKind, PerspectivePath, PerspectiveUnit,
};

use alloc::vec::Vec;

use thiserror::Error;

use crate::logic::{categorize, LogicError, StatementCategory};
use crate::term::{Iri, Term};
use crate::units::{primary_triple, resource_kind, target_classes, KnowledgeGraph, ResourceKind, StatementUnit, UnitError};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CausalError {
    #[error("{0} is not a correlation or causal statement unit")]
    NotCausal(Iri),
    #[error("{0} is not a universal statement")]
    NotUniversal(Iri),
    #[error("statements cannot be composed: {0}")]
    NotComposable(alloc::string::String),
    #[error("unknown variable {0}")]
    UnknownVariable(Iri),
    #[error("graph has a cycle through {0:?}")]
    CyclicGraph(Vec<Iri>),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

impl CausalError {
    pub fn code(&self) -> &'static str {
        match self {
            CausalError::NotCausal(_) => "NOT_CAUSAL",
            CausalError::NotUniversal(_) => "NOT_UNIVERSAL",
            CausalError::NotComposable(_) => "NOT_COMPOSABLE",
            CausalError::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            CausalError::CyclicGraph(_) => "CYCLIC_GRAPH",
            CausalError::Unit(e) => e.code(),
            CausalError::Logic(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
    Unsigned,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Unsigned => "unsigned",
        }
    }
}

pub fn polarity_of(predicate: &Iri) -> Polarity {
    match predicate.as_str() {
        vocab::RO_NEGATIVELY_REGULATES_CHARACTERISTIC
        | vocab::RO_NEGATIVELY_CORRELATED_WITH
        | vocab::RO_CAUSALLY_UPSTREAM_NEGATIVE => Polarity::Negative,
        vocab::SU_CAUSALLY_INFLUENCES_POSITIVE
        | vocab::RO_POSITIVELY_REGULATES_CHARACTERISTIC
        | vocab::RO_POSITIVELY_CORRELATED_WITH
        | vocab::RO_CAUSALLY_UPSTREAM_POSITIVE => Polarity::Positive,
        _ => Polarity::Unsigned,
    }
}

fn is_correlation_predicate(predicate: &Iri) -> bool {
    matches!(
        predicate.as_str(),
        vocab::RO_CORRELATED_WITH | vocab::RO_NEGATIVELY_CORRELATED_WITH | vocab::RO_POSITIVELY_CORRELATED_WITH
    )
}

fn is_causal_predicate(predicate: &Iri) -> bool {
    matches!(
        predicate.as_str(),
        vocab::RO_NEGATIVELY_REGULATES_CHARACTERISTIC
            | vocab::RO_POSITIVELY_REGULATES_CHARACTERISTIC
            | vocab::RO_CAUSALLY_UPSTREAM_NEGATIVE
            | vocab::RO_CAUSALLY_UPSTREAM_POSITIVE
            | vocab::RO_CAUSALLY_INFLUENCES
            | vocab::SU_CAUSALLY_INFLUENCES_POSITIVE
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Correlative,
    Causal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    Necessary,
    Sufficient,
    NecessaryAndSufficient,
}

/// One end of a causal statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalVariableRef {
    /// The resource in the unit content.
    pub resource: Iri,
    pub kind: ResourceKind,
    pub variable_class: Iri,
    /// A causal-variable compound unit typed with `variable_class`.
    pub unit_proxy: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalStatement {
    pub unit_id: Iri,
    pub source: CausalVariableRef,
    pub predicate: Iri,
    pub target: CausalVariableRef,
    pub mode: Mode,
    pub strength: Option<Strength>,
    pub category: StatementCategory,
}

impl CausalStatement {
    pub fn polarity(&self) -> Polarity {
        polarity_of(&self.predicate)
    }
}

fn variable_ref(unit: &StatementUnit, resource: &Iri) -> Result<CausalVariableRef, CausalError> {
    let class = target_classes(&unit.content, resource)
        .into_iter()
        .next()
        .ok_or_else(|| CausalError::NotCausal(unit.id.clone()))?;
    Ok(CausalVariableRef {
        resource: resource.clone(),
        kind: resource_kind(&unit.content, resource),
        variable_class: class,
        unit_proxy: None,
    })
}

/// Reads the causal reading of a statement unit without store context.
pub fn causal_statement_of(unit: &StatementUnit) -> Result<CausalStatement, CausalError> {
    let primary = primary_triple(&unit.content, None).ok_or_else(|| CausalError::NotCausal(unit.id.clone()))?;
    let Term::Iri(object) = &primary.object else {
        return Err(CausalError::NotCausal(unit.id.clone()));
    };
    let correlation_class = unit.has_class(&vocab::su_correlation_statement_unit());
    let causal_class = unit.has_class(&vocab::su_causal_statement_unit())
        || unit.unit_classes.iter().any(|c| strength_of_class(c).is_some());
    let mode = if correlation_class || (!causal_class && is_correlation_predicate(&primary.predicate)) {
        Mode::Correlative
    } else if causal_class || is_causal_predicate(&primary.predicate) {
        Mode::Causal
    } else {
        return Err(CausalError::NotCausal(unit.id.clone()));
    };
    let strength = unit.unit_classes.iter().find_map(strength_of_class);
    Ok(CausalStatement {
        unit_id: unit.id.clone(),
        source: variable_ref(unit, &primary.subject)?,
        predicate: primary.predicate.clone(),
        target: variable_ref(unit, object)?,
        mode,
        strength,
        category: categorize(unit)?,
    })
}

fn strength_of_class(class: &Iri) -> Option<Strength> {
    match class.as_str() {
        vocab::SU_NECESSARY_CAUSAL_STATEMENT_UNIT => Some(Strength::Necessary),
        vocab::SU_SUFFICIENT_CAUSAL_STATEMENT_UNIT => Some(Strength::Sufficient),
        vocab::SU_NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT => Some(Strength::NecessaryAndSufficient),
        _ => None,
    }
}

/// Causal reading of a stored unit, with unit proxies resolved.
pub fn causal_statement(kg: &KnowledgeGraph, unit_id: &Iri) -> Result<CausalStatement, CausalError> {
    let unit = kg.statement_unit(unit_id)?;
    let mut st = causal_statement_of(&unit)?;
    st.source.unit_proxy = variable_proxy(kg, &st.source.variable_class);
    st.target.unit_proxy = variable_proxy(kg, &st.target.variable_class);
    Ok(st)
}

fn variable_proxy(kg: &KnowledgeGraph, class: &Iri) -> Option<Iri> {
    let proxies = kg.units_of_class(&vocab::su_causal_variable_compound_unit());
    proxies.into_iter().find(|p| kg.units_of_class(class).contains(p))
}

/// Every universal correlation or causal statement unit in the store.
pub fn universal_causal_statements(kg: &KnowledgeGraph) -> Vec<CausalStatement> {
    let mut out = Vec::new();
    for id in kg.unit_ids() {
        let Ok(unit) = kg.statement_unit(&id) else { continue };
        let flagged = unit.has_class(&vocab::su_causal_statement_unit())
            || unit.has_class(&vocab::su_correlation_statement_unit())
            || unit.unit_classes.iter().any(|c| strength_of_class(c).is_some());
        if !flagged {
            continue;
        }
        if let Ok(st) = causal_statement(kg, &id) {
            if st.category == StatementCategory::Universal {
                out.push(st);
            }
        }
    }
    out
}

/// Adds an annotation to a unit's meta graph.
pub fn pin_annotation(kg: &mut KnowledgeGraph, unit_id: &Iri, predicate: Iri, value: impl Into<Term>) -> Result<(), CausalError> {
    kg.add_meta(unit_id, predicate, value).map_err(CausalError::from)
}

#[cfg(test)]
mod tests;

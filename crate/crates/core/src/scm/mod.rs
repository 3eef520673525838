//! Discrete structural causal models: exact enumeration, surgery,
//! adjustment-formula estimation, mediation and counterfactuals.

mod counterfactual;
mod dist;
mod estimate;
mod mediation;

pub use counterfactual::{
    build_potential_outcome_unit, canonical_form, counterfactual, intervention_text, is_deterministic_form,
    CounterfactualQuery,
};
pub use dist::Distribution;
pub use estimate::{estimate_backdoor, estimate_frontdoor, evaluate_estimand, evaluate_expr, interventional, EffectTable};
pub use mediation::{mediation_effects, MediationResult};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::inference::{Dag, InferenceError};
use crate::term::Iri;
use crate::units::UnitError;

/// Largest number of joint assignments enumerated.
pub const MAX_ASSIGNMENTS: u64 = 1 << 20;

/// Tolerance on row sums of probability tables.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A partial assignment by value label.
pub type Assignment = BTreeMap<Iri, String>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScmError {
    #[error("unknown variable {0}")]
    UnknownVariable(Iri),
    #[error("variable {variable} has no value {value:?}")]
    UnknownValue { variable: Iri, value: String },
    #[error("invalid table for {variable}: {reason}")]
    InvalidCpt { variable: Iri, reason: String },
    #[error("{0} joint assignments exceed the enumeration limit")]
    DomainTooLarge(u64),
    #[error("evidence has probability zero")]
    ZeroProbabilityEvidence,
    #[error("not a valid back-door adjustment set")]
    InvalidAdjustmentSet,
    #[error("not a valid front-door mediator set")]
    InvalidMediatorSet,
    #[error("{cause} -> {mediator} -> {effect} is not a chain")]
    NotAChain { cause: Iri, mediator: Iri, effect: Iri },
    #[error("outcome value {0:?} is not numeric")]
    NonNumericOutcome(String),
    #[error("{0} is not a deterministic function of its parents")]
    NotDeterministicForm(Iri),
    #[error("estimand has no expression to evaluate")]
    NotIdentified,
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Unit(#[from] UnitError),
}

impl ScmError {
    pub fn code(&self) -> &'static str {
        match self {
            ScmError::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            ScmError::UnknownValue { .. } => "UNKNOWN_VALUE",
            ScmError::InvalidCpt { .. } => "INVALID_CPT",
            ScmError::DomainTooLarge(_) => "DOMAIN_TOO_LARGE",
            ScmError::ZeroProbabilityEvidence => "ZERO_PROBABILITY_EVIDENCE",
            ScmError::InvalidAdjustmentSet => "INVALID_ADJUSTMENT_SET",
            ScmError::InvalidMediatorSet => "INVALID_MEDIATOR_SET",
            ScmError::NotAChain { .. } => "NOT_A_CHAIN",
            ScmError::NonNumericOutcome(_) => "NON_NUMERIC_OUTCOME",
            ScmError::NotDeterministicForm(_) => "NOT_DETERMINISTIC_FORM",
            ScmError::NotIdentified => "NOT_IDENTIFIED",
            ScmError::Inference(e) => e.code(),
            ScmError::Unit(e) => e.code(),
        }
    }
}

fn invalid(variable: &Iri, reason: impl Into<String>) -> ScmError {
    ScmError::InvalidCpt { variable: variable.clone(), reason: reason.into() }
}

/// Conditional probability table. Rows are indexed by the parent assignment
/// in mixed radix over `parents` (last parent fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Cpt {
    pub variable: Iri,
    pub parents: Vec<Iri>,
    rows: Vec<Vec<f64>>,
}

impl Cpt {
    /// Dense rows; checked against domains when the model is assembled.
    pub fn new(variable: Iri, parents: Vec<Iri>, rows: Vec<Vec<f64>>) -> Self {
        Self { variable, parents, rows }
    }

    /// A root table with a single row.
    pub fn root(variable: Iri, probabilities: Vec<f64>) -> Self {
        Self::new(variable, Vec::new(), vec![probabilities])
    }

    /// Rows keyed by comma-joined parent labels in parent order; the root
    /// row has the empty key.
    pub fn from_keyed(
        variable: Iri,
        parents: Vec<Iri>,
        domains: &BTreeMap<Iri, Vec<String>>,
        keyed: &BTreeMap<String, Vec<f64>>,
    ) -> Result<Self, ScmError> {
        let mut parent_domains = Vec::with_capacity(parents.len());
        for p in &parents {
            parent_domains.push(domains.get(p).ok_or_else(|| ScmError::UnknownVariable(p.clone()))?);
        }
        let count: usize = parent_domains.iter().map(|d| d.len()).product();
        let mut rows = Vec::with_capacity(count);
        for i in 0..count {
            let values = decode(i, &parent_domains.iter().map(|d| d.len()).collect::<Vec<_>>());
            let key: Vec<&str> = values.iter().zip(&parent_domains).map(|(&v, d)| d[v].as_str()).collect();
            let key = key.join(",");
            let row = keyed.get(&key).ok_or_else(|| invalid(&variable, alloc::format!("missing row {key:?}")))?;
            rows.push(row.clone());
        }
        if keyed.len() != count {
            return Err(invalid(&variable, "table has rows for unknown parent values"));
        }
        Ok(Self { variable, parents, rows })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// True when every row is a point mass.
    pub fn is_deterministic(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&p| p == 0.0 || p == 1.0))
    }
}

/// Mixed-radix decode, last position fastest.
pub(crate) fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        out[i] = index % radices[i];
        index /= radices[i];
    }
    out
}

pub(crate) fn encode(values: &[usize], radices: &[usize]) -> usize {
    values.iter().zip(radices).fold(0, |acc, (&v, &r)| acc * r + v)
}

/// A discrete SCM: a DAG, value domains, one table per variable and an
/// optional binding of variables to causal-map nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSCM {
    dag: Dag,
    domains: BTreeMap<Iri, Vec<String>>,
    cpts: BTreeMap<Iri, Cpt>,
    binding: BTreeMap<Iri, Iri>,
    intervened: BTreeMap<Iri, usize>,
}

impl DiscreteSCM {
    /// Assembles and validates a model. The DAG is read off the table parents.
    pub fn new(
        domains: BTreeMap<Iri, Vec<String>>,
        cpts: Vec<Cpt>,
        latent: impl IntoIterator<Item = Iri>,
        binding: BTreeMap<Iri, Iri>,
    ) -> Result<Self, ScmError> {
        let mut tables = BTreeMap::new();
        for cpt in cpts {
            if !domains.contains_key(&cpt.variable) {
                return Err(ScmError::UnknownVariable(cpt.variable));
            }
            if tables.contains_key(&cpt.variable) {
                return Err(invalid(&cpt.variable, "more than one table"));
            }
            tables.insert(cpt.variable.clone(), cpt);
        }
        for v in domains.keys() {
            if !tables.contains_key(v) {
                return Err(invalid(v, "no table"));
            }
        }
        let edges: Vec<(Iri, Iri)> =
            tables.values().flat_map(|c| c.parents.iter().map(|p| (p.clone(), c.variable.clone()))).collect();
        let dag = Dag::new(domains.keys().cloned(), edges, latent)?;
        for b in binding.keys() {
            if !domains.contains_key(b) {
                return Err(ScmError::UnknownVariable(b.clone()));
            }
        }
        let scm = Self { dag, domains, cpts: tables, binding, intervened: BTreeMap::new() };
        scm.validate()?;
        Ok(scm)
    }

    fn validate(&self) -> Result<(), ScmError> {
        for (v, dom) in &self.domains {
            if dom.is_empty() {
                return Err(invalid(v, "empty domain"));
            }
            let distinct: BTreeSet<&String> = dom.iter().collect();
            if distinct.len() != dom.len() {
                return Err(invalid(v, "duplicate value labels"));
            }
            let cpt = &self.cpts[v];
            let listed: BTreeSet<&Iri> = cpt.parents.iter().collect();
            if listed.len() != cpt.parents.len() {
                return Err(invalid(v, "duplicate parent"));
            }
            let expected: usize = cpt.parents.iter().map(|p| self.domains[p].len()).product();
            if cpt.rows.len() != expected {
                return Err(invalid(v, alloc::format!("expected {expected} rows, found {}", cpt.rows.len())));
            }
            for row in &cpt.rows {
                if row.len() != dom.len() {
                    return Err(invalid(v, "row length differs from domain size"));
                }
                if row.iter().any(|p| !p.is_finite() || *p < 0.0 || *p > 1.0) {
                    return Err(invalid(v, "probability outside [0, 1]"));
                }
                let s: f64 = row.iter().sum();
                if (s - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(invalid(v, alloc::format!("row sums to {s}")));
                }
            }
        }
        Ok(())
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    /// Variables in sorted order; this is also the joint's variable order.
    pub fn variables(&self) -> &[Iri] {
        self.dag.nodes()
    }

    pub fn domain(&self, v: &Iri) -> Result<&[String], ScmError> {
        self.domains.get(v).map(Vec::as_slice).ok_or_else(|| ScmError::UnknownVariable(v.clone()))
    }

    pub fn domains(&self) -> &BTreeMap<Iri, Vec<String>> {
        &self.domains
    }

    pub fn cpt(&self, v: &Iri) -> Result<&Cpt, ScmError> {
        self.cpts.get(v).ok_or_else(|| ScmError::UnknownVariable(v.clone()))
    }

    pub fn cpts(&self) -> impl Iterator<Item = &Cpt> {
        self.cpts.values()
    }

    pub fn binding(&self) -> &BTreeMap<Iri, Iri> {
        &self.binding
    }

    /// Causal-map node a variable stands for, or the variable itself.
    pub fn bound_node(&self, v: &Iri) -> Iri {
        self.binding.get(v).cloned().unwrap_or_else(|| v.clone())
    }

    /// Variables fixed by `intervene`, with their value indices.
    pub fn intervened(&self) -> &BTreeMap<Iri, usize> {
        &self.intervened
    }

    pub fn value_index(&self, v: &Iri, label: &str) -> Result<usize, ScmError> {
        self.domain(v)?
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ScmError::UnknownValue { variable: v.clone(), value: label.into() })
    }

    /// Row of `v`'s table for parent values given in table parent order.
    pub fn table_row(&self, v: &Iri, parent_values: &[usize]) -> Result<&[f64], ScmError> {
        let cpt = self.cpt(v)?;
        let radices: Vec<usize> = cpt.parents.iter().map(|p| self.domains[p].len()).collect();
        if parent_values.len() != radices.len() || parent_values.iter().zip(&radices).any(|(v, r)| v >= r) {
            return Err(invalid(v, "parent assignment out of range"));
        }
        Ok(&cpt.rows[encode(parent_values, &radices)])
    }

    /// Number of joint assignments (saturating).
    pub fn assignment_count(&self) -> u64 {
        self.domains.values().fold(1u64, |acc, d| acc.saturating_mul(d.len() as u64))
    }

    /// Row of `v`'s table for a full joint assignment in variable order.
    pub(crate) fn row_of(&self, v: usize, full: &[usize]) -> &[f64] {
        let name = &self.variables()[v];
        let cpt = &self.cpts[name];
        let mut index = 0;
        for p in &cpt.parents {
            let pi = self.dag.idx(p).expect("validated parent");
            index = index * self.domains[p].len() + full[pi];
        }
        &cpt.rows[index]
    }

    pub(crate) fn radices(&self) -> Vec<usize> {
        self.variables().iter().map(|v| self.domains[v].len()).collect()
    }

    pub(crate) fn labels_to_indices(&self, a: &Assignment) -> Result<Vec<(usize, usize)>, ScmError> {
        a.iter()
            .map(|(v, l)| Ok((self.dag.idx(v).map_err(|_| ScmError::UnknownVariable(v.clone()))?, self.value_index(v, l)?)))
            .collect()
    }
}

/// Exact joint by the chain-rule product over every assignment.
pub fn joint(scm: &DiscreteSCM) -> Result<Distribution, ScmError> {
    let count = scm.assignment_count();
    if count > MAX_ASSIGNMENTS {
        return Err(ScmError::DomainTooLarge(count));
    }
    let radices = scm.radices();
    let n = radices.len();
    let mut mass = vec![0.0; count as usize];
    let mut values = vec![0usize; n];
    for (i, slot) in mass.iter_mut().enumerate() {
        if i > 0 {
            // Odometer increment, last position fastest.
            let mut k = n;
            while k > 0 {
                k -= 1;
                values[k] += 1;
                if values[k] < radices[k] {
                    break;
                }
                values[k] = 0;
            }
        }
        let mut p = 1.0;
        for v in 0..n {
            p *= scm.row_of(v, &values)[values[v]];
            if p == 0.0 {
                break;
            }
        }
        *slot = p;
    }
    let domains = scm.variables().iter().map(|v| scm.domains[v].clone()).collect();
    Ok(Distribution::from_parts(scm.variables().to_vec(), domains, mass))
}

/// `P(targets | given)` as a renormalized restriction of `dist`.
pub fn conditional(dist: &Distribution, targets: &[Iri], given: &Assignment) -> Result<Distribution, ScmError> {
    dist.conditional(targets, given)
}

/// Graph surgery: every variable in `assignment` loses its parents and is
/// fixed to the given value.
pub fn intervene(scm: &DiscreteSCM, assignment: &Assignment) -> Result<DiscreteSCM, ScmError> {
    let mut out = scm.clone();
    let mut fixed = BTreeSet::new();
    for (v, label) in assignment {
        let value = scm.value_index(v, label)?;
        let k = scm.domains[v].len();
        let mut point = vec![0.0; k];
        point[value] = 1.0;
        out.cpts.insert(v.clone(), Cpt::root(v.clone(), point));
        out.intervened.insert(v.clone(), value);
        fixed.insert(v.clone());
    }
    out.dag = scm.dag.without_incoming(&fixed)?;
    Ok(out)
}

#[cfg(test)]
mod tests;

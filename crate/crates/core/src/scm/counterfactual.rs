use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Assignment, Cpt, DiscreteSCM, Distribution, ScmError, MAX_ASSIGNMENTS};
use crate::id::derived_iri;
use crate::term::{Iri, Literal, Term, Triple};
use crate::units::{CompoundUnit, KnowledgeGraph, UnitError};
use crate::vocab;

/// `Y_x` given evidence: the distribution of `query` had `intervention`
/// been applied, in the world that produced `evidence`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterfactualQuery {
    pub evidence: Assignment,
    pub intervention: Assignment,
    pub query: Iri,
}

impl CounterfactualQuery {
    pub fn new(query: Iri) -> Self {
        Self { evidence: Assignment::new(), intervention: Assignment::new(), query }
    }

    pub fn observe(mut self, v: Iri, value: impl Into<String>) -> Self {
        self.evidence.insert(v, value.into());
        self
    }

    pub fn set(mut self, v: Iri, value: impl Into<String>) -> Self {
        self.intervention.insert(v, value.into());
        self
    }
}

/// Every variable with parents has point-mass rows; parentless variables
/// play the role of exogenous noise.
pub fn is_deterministic_form(scm: &DiscreteSCM) -> bool {
    first_stochastic(scm).is_none()
}

fn first_stochastic(scm: &DiscreteSCM) -> Option<Iri> {
    scm.cpts().find(|c| !c.parents.is_empty() && !c.is_deterministic()).map(|c| c.variable.clone())
}

/// Rewrites every stochastic non-root variable as a deterministic function
/// of its parents and one fresh latent noise variable. The noise values are
/// the cells of the common refinement of the per-row cumulative partitions
/// of [0, 1); the function picks, per parent row, the value whose interval
/// covers the cell.
pub fn canonical_form(scm: &DiscreteSCM) -> Result<DiscreteSCM, ScmError> {
    let mut domains = scm.domains().clone();
    let mut latent: Vec<Iri> = scm.dag().latent().into_iter().collect();
    let mut cpts = Vec::new();
    for cpt in scm.cpts() {
        if cpt.parents.is_empty() || cpt.is_deterministic() {
            cpts.push(cpt.clone());
            continue;
        }
        let v = &cpt.variable;
        let k = scm.domains()[v].len();
        let cdfs: Vec<Vec<f64>> = cpt
            .rows()
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                let mut c: Vec<f64> = row.iter().map(|p| {
                    acc += p;
                    acc
                }).collect();
                c[k - 1] = 1.0;
                c
            })
            .collect();
        let mut cuts: Vec<f64> = cdfs.iter().flat_map(|c| c[..k - 1].iter().copied()).filter(|&b| b > 0.0 && b < 1.0).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        cuts.dedup();
        let mut bounds = vec![0.0];
        bounds.extend(cuts);
        bounds.push(1.0);
        let cells: Vec<(f64, f64)> = bounds.windows(2).map(|w| (w[0], w[1])).collect();

        let noise = v.with_suffix("-noise");
        if domains.contains_key(&noise) {
            return Err(ScmError::InvalidCpt { variable: v.clone(), reason: format!("{noise} already exists") });
        }
        domains.insert(noise.clone(), (0..cells.len()).map(|i| i.to_string()).collect());
        latent.push(noise.clone());
        cpts.push(Cpt::root(noise.clone(), cells.iter().map(|(a, b)| b - a).collect()));

        let mut rows = Vec::with_capacity(cdfs.len() * cells.len());
        for cdf in &cdfs {
            for (lo, hi) in &cells {
                let mid = (lo + hi) / 2.0;
                let value = cdf.iter().position(|&c| c > mid).unwrap_or(k - 1);
                let mut row = vec![0.0; k];
                row[value] = 1.0;
                rows.push(row);
            }
        }
        let mut parents = cpt.parents.clone();
        parents.push(noise);
        cpts.push(Cpt::new(v.clone(), parents, rows));
    }
    DiscreteSCM::new(domains, cpts, latent, scm.binding().clone())
}

/// Abduction, action and prediction by enumerating the parentless variables.
pub fn counterfactual(scm: &DiscreteSCM, q: &CounterfactualQuery) -> Result<Distribution, ScmError> {
    let query = q.query.clone();
    let query_index = scm.dag().idx(&query).map_err(|_| ScmError::UnknownVariable(query.clone()))?;
    let evidence = scm.labels_to_indices(&q.evidence)?;
    let action: BTreeMap<usize, usize> = scm.labels_to_indices(&q.intervention)?.into_iter().collect();
    if let Some(v) = first_stochastic(scm) {
        return Err(ScmError::NotDeterministicForm(v));
    }

    let n = scm.variables().len();
    let order = scm.dag().topo_idx();
    let roots: Vec<usize> = (0..n).filter(|&i| scm.dag().parent_idx(i).is_empty()).collect();
    let radices: Vec<usize> = roots.iter().map(|&r| scm.domains()[&scm.variables()[r]].len()).collect();
    let count = radices.iter().fold(1u64, |acc, &r| acc.saturating_mul(r as u64));
    if count > MAX_ASSIGNMENTS {
        return Err(ScmError::DomainTooLarge(count));
    }

    let propagate = |values: &mut Vec<usize>, fixed: &BTreeMap<usize, usize>| {
        for &v in &order {
            if let Some(&x) = fixed.get(&v) {
                values[v] = x;
            } else if !scm.dag().parent_idx(v).is_empty() {
                values[v] = scm.row_of(v, values).iter().position(|&p| p == 1.0).expect("point-mass row");
            }
        }
    };

    let k = scm.domains()[&query].len();
    let mut mass = vec![0.0; k];
    let mut evidence_mass = 0.0;
    let none = BTreeMap::new();
    for i in 0..count as usize {
        let u = super::decode(i, &radices);
        let mut values = vec![0usize; n];
        let mut weight = 1.0;
        for (&r, &x) in roots.iter().zip(&u) {
            values[r] = x;
            weight *= scm.row_of(r, &values)[x];
        }
        if weight == 0.0 {
            continue;
        }
        let mut factual = values.clone();
        propagate(&mut factual, &none);
        if !evidence.iter().all(|&(v, x)| factual[v] == x) {
            continue;
        }
        evidence_mass += weight;
        let mut world = values;
        propagate(&mut world, &action);
        mass[world[query_index]] += weight;
    }
    if evidence_mass == 0.0 {
        return Err(ScmError::ZeroProbabilityEvidence);
    }
    for p in &mut mass {
        *p /= evidence_mass;
    }
    let domain = scm.domains()[&query].clone();
    Ok(Distribution::from_parts(vec![query], vec![domain], mass))
}

/// `do(X = 1, Z = 0)` with local names.
pub fn intervention_text(intervention: &Assignment) -> String {
    let parts: Vec<String> = intervention.iter().map(|(v, x)| format!("{} = {}", v.local_name(), x)).collect();
    format!("do({})", parts.join(", "))
}

/// Packages a counterfactual result as a potential-outcome compound unit:
/// the observed unit, a freshly minted counterfactual statement unit and the
/// universal causal statement unit behind it.
pub fn build_potential_outcome_unit(
    kg: &mut KnowledgeGraph,
    observed_unit: &Iri,
    result: &Distribution,
    universal_unit: &Iri,
    intervention: &Assignment,
    method: &Iri,
) -> Result<CompoundUnit, ScmError> {
    for m in [observed_unit, universal_unit] {
        if !kg.contains_unit(m) {
            return Err(UnitError::DanglingMember(m.clone()).into());
        }
    }
    let variable = result
        .variables()
        .first()
        .cloned()
        .ok_or_else(|| ScmError::UnknownVariable(Iri::from_static("urn:su:missing-query")))?;
    let domain = result.domains()[0].clone();
    let (best, p_best) = result
        .mass()
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p > acc.1 { (i, p) } else { acc });
    let spread: Vec<String> = domain.iter().zip(result.mass()).map(|(l, p)| format!("{l}={p}")).collect();
    let text = intervention_text(intervention);
    let uncertainty = Literal::typed(format!("{}", 1.0 - p_best), vocab::xsd_double());

    let resource = derived_iri("res", &[observed_unit.as_str(), universal_unit.as_str(), &text]);
    let content = vec![
        Triple::new(resource.clone(), vocab::rdf_type(), vocab::su_some_instance_resource()),
        Triple::new(resource.clone(), vocab::rdf_type(), variable),
        Triple::new(resource.clone(), vocab::su_predicted_value(), Literal::simple(domain[best].clone())),
        Triple::new(
            resource.clone(),
            vocab::su_predicted_probability(),
            Literal::typed(format!("{p_best}"), vocab::xsd_double()),
        ),
        Triple::new(resource, vocab::su_predicted_distribution(), Literal::simple(spread.join(";"))),
    ];
    let meta: Vec<(Iri, Term)> = vec![
        (vocab::su_intervention(), Literal::simple(text.clone()).into()),
        (vocab::su_satisfies(), universal_unit.clone().into()),
        (vocab::su_counterfactual_of(), observed_unit.clone().into()),
        (vocab::su_derived_applying_method(), method.clone().into()),
        (vocab::su_uncertainty(), uncertainty.clone().into()),
    ];
    let cf = kg.mint_statement_unit(
        &content,
        &[vocab::su_counterfactual_statement_unit(), vocab::su_contingent_statement_unit()],
        &meta,
    )?;
    let compound_meta: Vec<(Iri, Term)> = vec![
        (vocab::su_intervention(), Literal::simple(text).into()),
        (vocab::su_derived_applying_method(), method.clone().into()),
        (vocab::su_uncertainty(), uncertainty.into()),
    ];
    Ok(kg.mint_compound_unit_with_meta(
        &[observed_unit.clone(), cf.id, universal_unit.clone()],
        &[vocab::su_potential_outcome_compound_unit()],
        &compound_meta,
    )?)
}

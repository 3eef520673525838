use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::dist::numeric;
use super::{intervene, joint, Assignment, DiscreteSCM, Distribution, ScmError};
use crate::inference::satisfies_backdoor;
use crate::term::Iri;

/// Natural effects of `cause` on `effect` through `mediator`, moving the
/// cause from `baseline` to `treated`.
#[derive(Debug, Clone, PartialEq)]
pub struct MediationResult {
    pub cause: Iri,
    pub mediator: Iri,
    pub effect: Iri,
    pub baseline: alloc::string::String,
    pub treated: alloc::string::String,
    /// Total effect by surgery.
    pub te: f64,
    pub nde: f64,
    pub nie: f64,
    /// (i) no cause-outcome confounding, (ii) no mediator-outcome
    /// confounding given the cause, (iii) no mediator-outcome confounder
    /// that the cause affects.
    pub assumptions_checked: [bool; 3],
}

impl MediationResult {
    pub fn assumptions_hold(&self) -> bool {
        self.assumptions_checked.iter().all(|b| *b)
    }
}

fn single(v: &Iri) -> BTreeSet<Iri> {
    [v.clone()].into_iter().collect()
}

/// Reads `P(target = · | conditions)` straight from the target's table when
/// its parents are among the conditioning variables, which keeps exact zeros
/// exact; otherwise conditions the observational joint.
fn conditional_row(
    scm: &DiscreteSCM,
    observed: &Distribution,
    target: &Iri,
    conditions: &[(&Iri, usize)],
) -> Result<Vec<f64>, ScmError> {
    let cpt = scm.cpt(target)?;
    let lookup: Option<Vec<usize>> =
        cpt.parents.iter().map(|p| conditions.iter().find(|(c, _)| *c == p).map(|(_, v)| *v)).collect();
    if let Some(values) = lookup {
        let mut given = Assignment::new();
        for (c, v) in conditions {
            given.insert((*c).clone(), scm.domain(c)?[*v].clone());
        }
        // The table answers the query only if the conditioning event is possible.
        if observed.probability(&given)? > 0.0 {
            return Ok(scm.table_row(target, &values)?.to_vec());
        }
        return Err(ScmError::ZeroProbabilityEvidence);
    }
    let mut given = Assignment::new();
    for (c, v) in conditions {
        given.insert((*c).clone(), scm.domain(c)?[*v].clone());
    }
    Ok(observed.conditional(core::slice::from_ref(target), &given)?.mass().to_vec())
}

fn expectation(values: &[f64], row: &[f64]) -> f64 {
    values.iter().zip(row).map(|(y, p)| y * p).sum()
}

/// Natural direct and indirect effects by the mediation formula, and the
/// total effect computed independently by surgery.
pub fn mediation_effects(
    scm: &DiscreteSCM,
    cause: &Iri,
    mediator: &Iri,
    effect: &Iri,
    baseline: &str,
    treated: &str,
) -> Result<MediationResult, ScmError> {
    let dag = scm.dag();
    let not_chain = || ScmError::NotAChain { cause: cause.clone(), mediator: mediator.clone(), effect: effect.clone() };
    if !dag.contains(cause) || !dag.contains(mediator) || !dag.contains(effect) {
        let missing = [cause, mediator, effect].into_iter().find(|v| !dag.contains(v)).expect("one is missing");
        return Err(ScmError::UnknownVariable(missing.clone()));
    }
    if !dag.children(cause)?.contains(mediator) || !dag.children(mediator)?.contains(effect) {
        return Err(not_chain());
    }
    let b = scm.value_index(cause, baseline)?;
    let t = scm.value_index(cause, treated)?;
    let ys: Vec<f64> = scm.domain(effect)?.iter().map(|l| numeric(l)).collect::<Result<_, _>>()?;

    let observed_vars: Vec<Iri> = dag.observed().into_iter().collect();
    let observed = joint(scm)?.marginal(&observed_vars)?;
    let km = scm.domain(mediator)?.len();
    let pm_b = conditional_row(scm, &observed, mediator, &[(cause, b)])?;
    let pm_t = conditional_row(scm, &observed, mediator, &[(cause, t)])?;

    let mut nde = 0.0;
    let mut nie = 0.0;
    for m in 0..km {
        let needed_b = pm_b[m] != 0.0 || pm_t[m] != 0.0;
        let e_b = if needed_b {
            expectation(&ys, &conditional_row(scm, &observed, effect, &[(cause, b), (mediator, m)])?)
        } else {
            0.0
        };
        if pm_b[m] != 0.0 {
            let e_t = expectation(&ys, &conditional_row(scm, &observed, effect, &[(cause, t), (mediator, m)])?);
            nde += (e_t - e_b) * pm_b[m];
        }
        nie += e_b * (pm_t[m] - pm_b[m]);
    }

    let mean_under = |value: &str| -> Result<f64, ScmError> {
        let mut a = Assignment::new();
        a.insert(cause.clone(), value.into());
        let d = joint(&intervene(scm, &a)?)?.marginal(core::slice::from_ref(effect))?;
        Ok(expectation(&ys, d.mass()))
    };
    let te = mean_under(treated)? - mean_under(baseline)?;

    let no_cause_outcome = satisfies_backdoor(dag, cause, effect, &BTreeSet::new())?;
    let no_mediator_outcome = satisfies_backdoor(dag, mediator, effect, &single(cause))?;
    let anc_m = dag.ancestors(mediator)?;
    let anc_y = dag.ancestors(effect)?;
    let affected_confounder = dag
        .descendants(cause)?
        .into_iter()
        .any(|w| &w != cause && &w != mediator && &w != effect && anc_m.contains(&w) && anc_y.contains(&w));

    Ok(MediationResult {
        cause: cause.clone(),
        mediator: mediator.clone(),
        effect: effect.clone(),
        baseline: baseline.into(),
        treated: treated.into(),
        te,
        nde,
        nie,
        assumptions_checked: [no_cause_outcome, no_mediator_outcome, !affected_confounder],
    })
}

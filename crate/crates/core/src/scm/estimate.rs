use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{intervene, joint, Assignment, DiscreteSCM, Distribution, ScmError};
use crate::inference::{satisfies_backdoor, satisfies_frontdoor, Estimand, Expr, Var};
use crate::term::Iri;

/// `P(effect | do(cause = x))` for every value `x` of the cause; one row per
/// cause value, each row a distribution over the effect domain.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectTable {
    pub cause: Iri,
    pub effect: Iri,
    pub cause_values: Vec<String>,
    pub effect_values: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl EffectTable {
    pub fn row(&self, cause_value: &str) -> Option<&[f64]> {
        let i = self.cause_values.iter().position(|v| v == cause_value)?;
        Some(&self.rows[i])
    }

    pub fn prob(&self, cause_value: &str, effect_value: &str) -> Option<f64> {
        let j = self.effect_values.iter().position(|v| v == effect_value)?;
        self.row(cause_value).map(|r| r[j])
    }

    pub fn max_abs_diff(&self, other: &EffectTable) -> Option<f64> {
        if self.cause_values != other.cause_values || self.effect_values != other.effect_values {
            return None;
        }
        let mut worst = 0.0f64;
        for (a, b) in self.rows.iter().zip(&other.rows) {
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
        Some(worst)
    }

    /// Row `i` as a distribution over the effect.
    pub fn distribution(&self, i: usize) -> Distribution {
        Distribution::from_parts(vec![self.effect.clone()], vec![self.effect_values.clone()], self.rows[i].clone())
    }
}

fn table(scm: &DiscreteSCM, cause: &Iri, effect: &Iri) -> Result<EffectTable, ScmError> {
    Ok(EffectTable {
        cause: cause.clone(),
        effect: effect.clone(),
        cause_values: scm.domain(cause)?.to_vec(),
        effect_values: scm.domain(effect)?.to_vec(),
        rows: Vec::new(),
    })
}

/// Ground truth by surgery: intervene, enumerate, marginalize.
pub fn interventional(scm: &DiscreteSCM, cause: &Iri, effect: &Iri) -> Result<EffectTable, ScmError> {
    let mut out = table(scm, cause, effect)?;
    for x in &out.cause_values {
        let mut a = Assignment::new();
        a.insert(cause.clone(), x.clone());
        let d = joint(&intervene(scm, &a)?)?.marginal(core::slice::from_ref(effect))?;
        out.rows.push(d.mass().to_vec());
    }
    Ok(out)
}

fn observed_joint(scm: &DiscreteSCM) -> Result<Distribution, ScmError> {
    let observed: Vec<Iri> = scm.dag().observed().into_iter().collect();
    joint(scm)?.marginal(&observed)
}

fn check_pair(scm: &DiscreteSCM, cause: &Iri, effect: &Iri) -> Result<(), ScmError> {
    scm.domain(cause)?;
    scm.domain(effect)?;
    if cause == effect {
        return Err(crate::inference::InferenceError::OverlappingSets.into());
    }
    Ok(())
}

/// `sum_Z P(effect | cause, Z) P(Z)` from the observational joint.
pub fn estimate_backdoor(
    scm: &DiscreteSCM,
    cause: &Iri,
    effect: &Iri,
    z: &BTreeSet<Iri>,
) -> Result<EffectTable, ScmError> {
    check_pair(scm, cause, effect)?;
    for v in z {
        scm.domain(v)?;
    }
    if z.contains(cause)
        || z.iter().any(|v| scm.dag().is_latent(v))
        || scm.dag().is_latent(cause)
        || scm.dag().is_latent(effect)
        || !satisfies_backdoor(scm.dag(), cause, effect, z)?
    {
        return Err(ScmError::InvalidAdjustmentSet);
    }
    let mut vars = vec![cause.clone()];
    vars.extend(z.iter().cloned());
    vars.push(effect.clone());
    let m = observed_joint(scm)?.marginal(&vars)?;
    let kx = scm.domain(cause)?.len();
    let ky = scm.domain(effect)?.len();
    let kz: usize = z.iter().map(|v| scm.domains()[v].len()).product();
    let at = |x: usize, zi: usize, y: usize| m.mass()[(x * kz + zi) * ky + y];

    let mut out = table(scm, cause, effect)?;
    for x in 0..kx {
        let mut row = vec![0.0; ky];
        for zi in 0..kz {
            let pz: f64 = (0..kx).flat_map(|x2| (0..ky).map(move |y| (x2, y))).map(|(x2, y)| at(x2, zi, y)).sum();
            if pz == 0.0 {
                continue;
            }
            let pxz: f64 = (0..ky).map(|y| at(x, zi, y)).sum();
            if pxz == 0.0 {
                return Err(ScmError::ZeroProbabilityEvidence);
            }
            for (y, r) in row.iter_mut().enumerate() {
                *r += at(x, zi, y) / pxz * pz;
            }
        }
        out.rows.push(row);
    }
    Ok(out)
}

/// `sum_M P(M | cause) sum_X' P(effect | M, X') P(X')` from the observational
/// joint over observed variables.
pub fn estimate_frontdoor(
    scm: &DiscreteSCM,
    cause: &Iri,
    effect: &Iri,
    mediators: &BTreeSet<Iri>,
) -> Result<EffectTable, ScmError> {
    check_pair(scm, cause, effect)?;
    for v in mediators {
        scm.domain(v)?;
    }
    if scm.dag().is_latent(cause)
        || scm.dag().is_latent(effect)
        || !satisfies_frontdoor(scm.dag(), cause, effect, mediators)?
    {
        return Err(ScmError::InvalidMediatorSet);
    }
    let mut vars = vec![cause.clone()];
    vars.extend(mediators.iter().cloned());
    vars.push(effect.clone());
    let d = observed_joint(scm)?.marginal(&vars)?;
    let kx = scm.domain(cause)?.len();
    let ky = scm.domain(effect)?.len();
    let km: usize = mediators.iter().map(|v| scm.domains()[v].len()).product();
    let at = |x: usize, mi: usize, y: usize| d.mass()[(x * km + mi) * ky + y];
    let p_xm = |x: usize, mi: usize| -> f64 { (0..ky).map(|y| at(x, mi, y)).sum() };
    let p_x: Vec<f64> = (0..kx).map(|x| (0..km).map(|mi| p_xm(x, mi)).sum()).collect();

    let mut out = table(scm, cause, effect)?;
    for x in 0..kx {
        if p_x[x] == 0.0 {
            return Err(ScmError::ZeroProbabilityEvidence);
        }
        let mut row = vec![0.0; ky];
        for mi in 0..km {
            let pm_given_x = p_xm(x, mi) / p_x[x];
            if pm_given_x == 0.0 {
                continue;
            }
            for (x2, &px2) in p_x.iter().enumerate() {
                if px2 == 0.0 {
                    continue;
                }
                let pxm = p_xm(x2, mi);
                if pxm == 0.0 {
                    return Err(ScmError::ZeroProbabilityEvidence);
                }
                for (y, r) in row.iter_mut().enumerate() {
                    *r += pm_given_x * (at(x2, mi, y) / pxm) * px2;
                }
            }
        }
        out.rows.push(row);
    }
    Ok(out)
}

/// Evaluates an observational expression on `dist`. `env` binds the free
/// variables to value indices; primed copies read the same column.
pub fn evaluate_expr(expr: &Expr, dist: &Distribution, env: &BTreeMap<Var, usize>) -> Result<f64, ScmError> {
    match expr {
        Expr::Prob { target, given } => {
            let fixed = |vars: &[Var]| -> Result<Vec<(usize, usize)>, ScmError> {
                vars.iter()
                    .map(|v| {
                        let i = dist
                            .variables()
                            .iter()
                            .position(|x| *x == v.node)
                            .ok_or_else(|| ScmError::UnknownVariable(v.node.clone()))?;
                        let value = *env.get(v).ok_or_else(|| ScmError::UnknownVariable(v.node.clone()))?;
                        Ok((i, value))
                    })
                    .collect()
            };
            let g = fixed(given)?;
            let mut all = fixed(target)?;
            all.extend(g.iter().copied());
            let denom = if g.is_empty() { 1.0 } else { dist.mass_where(&g) };
            if denom == 0.0 {
                return Err(ScmError::ZeroProbabilityEvidence);
            }
            Ok(dist.mass_where(&all) / denom)
        }
        Expr::SumOver { vars, body } => {
            let mut radices = Vec::with_capacity(vars.len());
            for v in vars {
                radices.push(dist.domain(&v.node).ok_or_else(|| ScmError::UnknownVariable(v.node.clone()))?.len());
            }
            let count: usize = radices.iter().product();
            let mut total = 0.0;
            let mut inner = env.clone();
            for i in 0..count {
                for (v, value) in vars.iter().zip(super::decode(i, &radices)) {
                    inner.insert(v.clone(), value);
                }
                total += evaluate_expr(body, dist, &inner)?;
            }
            Ok(total)
        }
        Expr::Product(factors) => {
            // A zero factor makes the term vanish even where another factor
            // conditions on an impossible event.
            let mut product = 1.0;
            let mut pending = None;
            for f in factors {
                match evaluate_expr(f, dist, env) {
                    Ok(0.0) => return Ok(0.0),
                    Ok(v) => product *= v,
                    Err(e) => {
                        pending.get_or_insert(e);
                    }
                }
            }
            match pending {
                Some(e) => Err(e),
                None => Ok(product),
            }
        }
        Expr::Difference(a, b) => Ok(evaluate_expr(a, dist, env)? - evaluate_expr(b, dist, env)?),
    }
}

/// Evaluates an identified estimand on the observational joint (latent
/// variables marginalized out).
pub fn evaluate_estimand(scm: &DiscreteSCM, estimand: &Estimand) -> Result<EffectTable, ScmError> {
    let expr = estimand.expr.as_ref().ok_or(ScmError::NotIdentified)?;
    let dist = observed_joint(scm)?;
    let mut out = table(scm, &estimand.cause, &estimand.effect)?;
    let ky = out.effect_values.len();
    for x in 0..out.cause_values.len() {
        let mut row = Vec::with_capacity(ky);
        for y in 0..ky {
            let mut env = BTreeMap::new();
            env.insert(Var::new(estimand.cause.clone()), x);
            env.insert(Var::new(estimand.effect.clone()), y);
            row.push(evaluate_expr(expr, &dist, &env)?);
        }
        out.rows.push(row);
    }
    Ok(out)
}

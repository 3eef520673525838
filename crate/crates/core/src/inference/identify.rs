use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::adjust::{backdoor_sets, find_instruments, frontdoor_check, DEFAULT_MAX_ADJUSTMENT_SIZE};
use super::docalc::DoSearch;
use super::estimand::{DerivationStep, Estimand, Expr, Strategy, Var};
use super::{Dag, InferenceError};
use crate::term::Iri;

/// Maximum number of rewrites in the do-calculus fallback search.
pub const DO_SEARCH_DEPTH: usize = 6;

/// `sum_{Z} P(Y|X,Z) * P(Z)`, or `P(Y|X)` for an empty set.
pub fn backdoor_expr(cause: &Iri, effect: &Iri, z: &BTreeSet<Iri>) -> Expr {
    let mut given = vec![Var::new(cause.clone())];
    given.extend(z.iter().cloned().map(Var::new));
    let outcome = Expr::prob([Var::new(effect.clone())], given);
    if z.is_empty() {
        outcome
    } else {
        Expr::sum(
            z.iter().cloned().map(Var::new),
            Expr::product([outcome, Expr::prob(z.iter().cloned().map(Var::new), [])]),
        )
    }
}

/// `sum_{M} P(M|X) * sum_{X'} P(Y|M,X') * P(X')`.
pub fn frontdoor_expr(cause: &Iri, effect: &Iri, m: &BTreeSet<Iri>) -> Expr {
    let ms: Vec<Var> = m.iter().cloned().map(Var::new).collect();
    let xp = Var::primed(cause.clone());
    let mut given = ms.clone();
    given.push(xp.clone());
    let inner = Expr::sum(
        [xp.clone()],
        Expr::product([Expr::prob([Var::new(effect.clone())], given), Expr::prob([xp], [])]),
    );
    Expr::sum(ms.clone(), Expr::product([Expr::prob(ms, [Var::new(cause.clone())]), inner]))
}

/// Identifies `P(effect | do(cause))`: back-door, then front-door, then
/// instruments, then a bounded do-calculus search.
pub fn identify_effect(dag: &Dag, cause: &Iri, effect: &Iri) -> Result<Estimand, InferenceError> {
    identify_effect_bounded(dag, cause, effect, DEFAULT_MAX_ADJUSTMENT_SIZE)
}

/// [`identify_effect`] with a custom bound on back-door set size.
pub fn identify_effect_bounded(
    dag: &Dag,
    cause: &Iri,
    effect: &Iri,
    max_adjustment_size: usize,
) -> Result<Estimand, InferenceError> {
    dag.idx(cause)?;
    dag.idx(effect)?;
    if cause == effect {
        return Err(InferenceError::OverlappingSets);
    }
    let mut est = Estimand::unidentified(cause.clone(), effect.clone());

    let sets = backdoor_sets(dag, cause, effect, max_adjustment_size)?;
    if let Some(best) = sets.iter().min_by(|a, b| {
        a.variables.len().cmp(&b.variables.len()).then_with(|| a.variables.iter().cmp(b.variables.iter()))
    }) {
        est.strategy = Strategy::BackDoor;
        est.expr = Some(backdoor_expr(cause, effect, &best.variables));
        if best.variables.is_empty() {
            est.derivation.push(DerivationStep {
                rule: 2,
                detail: alloc::format!("exchange do({0}) for {0}", cause.local_name()),
            });
        }
        est.adjustment = Some(best.variables.clone());
        return Ok(est);
    }

    if let Some(m) = frontdoor_check(dag, cause, effect)? {
        est.strategy = Strategy::FrontDoor;
        est.expr = Some(frontdoor_expr(cause, effect, &m));
        est.mediators = Some(m);
        return Ok(est);
    }

    let instruments = find_instruments(dag, cause, effect)?;
    if !instruments.is_empty() {
        est.strategy = Strategy::InstrumentalVariable;
        est.instruments = instruments;
        return Ok(est);
    }

    let y: BTreeSet<Iri> = [effect.clone()].into_iter().collect();
    let x: BTreeSet<Iri> = [cause.clone()].into_iter().collect();
    if let Some((expr, steps)) = DoSearch::new(dag).solve(&y, &x, &BTreeSet::new(), DO_SEARCH_DEPTH)? {
        est.strategy = Strategy::DoCalculus;
        est.expr = Some(expr);
        est.derivation = steps;
    }
    Ok(est)
}

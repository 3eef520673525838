use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::dsep::d_separated_sets;
use super::{Dag, InferenceError};
use crate::term::Iri;

pub const DEFAULT_MAX_ADJUSTMENT_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjustmentSet {
    pub variables: BTreeSet<Iri>,
    pub minimal: bool,
}

fn single(v: &Iri) -> BTreeSet<Iri> {
    [v.clone()].into_iter().collect()
}

/// Subsets of `items` (sorted) with sizes in `sizes`, smallest first and
/// lexicographic within a size.
fn subsets_by_size(items: &[Iri], sizes: core::ops::RangeInclusive<usize>) -> impl Iterator<Item = Vec<Iri>> + '_ {
    sizes.flat_map(move |k| Combinations::new(items.len(), k).map(move |c| c.iter().map(|&i| items[i].clone()).collect()))
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Whether `z` satisfies the back-door criterion for (`cause`, `effect`).
pub fn satisfies_backdoor(dag: &Dag, cause: &Iri, effect: &Iri, z: &BTreeSet<Iri>) -> Result<bool, InferenceError> {
    let desc = dag.descendants(cause)?;
    if z.iter().any(|v| desc.contains(v) || v == effect) {
        return Ok(false);
    }
    let cut = dag.without_outgoing(&single(cause))?;
    d_separated_sets(&cut, &single(cause), &single(effect), z)
}

/// Minimal back-door adjustment sets of at most `max_size` observed
/// variables, ordered by their sorted members.
pub fn backdoor_sets(dag: &Dag, cause: &Iri, effect: &Iri, max_size: usize) -> Result<Vec<AdjustmentSet>, InferenceError> {
    if cause == effect {
        return Err(InferenceError::OverlappingSets);
    }
    dag.idx(effect)?;
    let desc = dag.descendants(cause)?;
    let candidates: Vec<Iri> = dag
        .observed()
        .into_iter()
        .filter(|v| v != cause && v != effect && !desc.contains(v))
        .collect();
    let cut = dag.without_outgoing(&single(cause))?;
    let mut found: Vec<BTreeSet<Iri>> = Vec::new();
    for subset in subsets_by_size(&candidates, 0..=max_size.min(candidates.len())) {
        let z: BTreeSet<Iri> = subset.into_iter().collect();
        if found.iter().any(|f| f.is_subset(&z)) {
            continue;
        }
        if d_separated_sets(&cut, &single(cause), &single(effect), &z)? {
            found.push(z);
        }
    }
    let mut sets: Vec<AdjustmentSet> = found.into_iter().map(|variables| AdjustmentSet { variables, minimal: true }).collect();
    sets.sort_by(|a, b| a.variables.iter().cmp(b.variables.iter()));
    Ok(sets)
}

/// Whether mediator set `m` satisfies the front-door criterion.
pub fn satisfies_frontdoor(dag: &Dag, cause: &Iri, effect: &Iri, m: &BTreeSet<Iri>) -> Result<bool, InferenceError> {
    if m.is_empty() || m.contains(cause) || m.contains(effect) || m.iter().any(|v| dag.is_latent(v)) {
        return Ok(false);
    }
    let mask = dag.mask_of(m)?;
    let without_m = dag.without_nodes(&mask);
    if without_m.descendants(cause)?.contains(effect) {
        return Ok(false);
    }
    let cut_cause = dag.without_outgoing(&single(cause))?;
    if !d_separated_sets(&cut_cause, &single(cause), m, &BTreeSet::new())? {
        return Ok(false);
    }
    let cut_m = dag.without_outgoing(m)?;
    d_separated_sets(&cut_m, m, &single(effect), &single(cause))
}

/// The first (smallest, then lexicographic) front-door mediator set.
pub fn frontdoor_check(dag: &Dag, cause: &Iri, effect: &Iri) -> Result<Option<BTreeSet<Iri>>, InferenceError> {
    frontdoor_check_bounded(dag, cause, effect, DEFAULT_MAX_ADJUSTMENT_SIZE)
}

pub fn frontdoor_check_bounded(
    dag: &Dag,
    cause: &Iri,
    effect: &Iri,
    max_size: usize,
) -> Result<Option<BTreeSet<Iri>>, InferenceError> {
    if cause == effect {
        return Err(InferenceError::OverlappingSets);
    }
    dag.idx(cause)?;
    dag.idx(effect)?;
    let candidates: Vec<Iri> = dag.observed().into_iter().filter(|v| v != cause && v != effect).collect();
    for subset in subsets_by_size(&candidates, 1..=max_size.min(candidates.len())) {
        let m: BTreeSet<Iri> = subset.into_iter().collect();
        if satisfies_frontdoor(dag, cause, effect, &m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Latent nodes with directed paths to both `cause` and `effect`.
pub fn latent_confounders(dag: &Dag, cause: &Iri, effect: &Iri) -> Result<BTreeSet<Iri>, InferenceError> {
    let a = dag.ancestors(cause)?;
    let b = dag.ancestors(effect)?;
    Ok(dag.latent().into_iter().filter(|l| a.contains(l) && b.contains(l)).collect())
}

/// Whether `z` is an instrument for (`cause`, `effect`).
pub fn is_instrument(dag: &Dag, cause: &Iri, effect: &Iri, z: &Iri) -> Result<bool, InferenceError> {
    if z == cause || z == effect || dag.is_latent(z) {
        return Ok(false);
    }
    let reach = dag.descendants(z)?;
    if !reach.contains(cause) {
        return Ok(false);
    }
    let mut drop = vec![false; dag.len()];
    drop[dag.idx(cause)?] = true;
    if dag.without_nodes(&drop).descendants(z)?.contains(effect) {
        return Ok(false);
    }
    let confounders = latent_confounders(dag, cause, effect)?;
    if !confounders.is_empty() && !d_separated_sets(dag, &single(z), &confounders, &BTreeSet::new())? {
        return Ok(false);
    }
    let cut = dag.without_outgoing(&single(cause))?;
    d_separated_sets(&cut, &single(z), &single(effect), &BTreeSet::new())
}

pub fn find_instruments(dag: &Dag, cause: &Iri, effect: &Iri) -> Result<Vec<Iri>, InferenceError> {
    if cause == effect {
        return Err(InferenceError::OverlappingSets);
    }
    dag.idx(cause)?;
    dag.idx(effect)?;
    let mut out = Vec::new();
    for z in dag.observed() {
        if is_instrument(dag, cause, effect, &z)? {
            out.push(z);
        }
    }
    Ok(out)
}

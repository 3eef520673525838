use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::dag::Mask;
use super::{Dag, InferenceError};
use crate::term::Iri;

/// `x` and `y` are d-separated by `z`.
pub fn d_separated(dag: &Dag, x: &Iri, y: &Iri, z: &BTreeSet<Iri>) -> Result<bool, InferenceError> {
    let xs: BTreeSet<Iri> = [x.clone()].into_iter().collect();
    let ys: BTreeSet<Iri> = [y.clone()].into_iter().collect();
    d_separated_sets(dag, &xs, &ys, z)
}

/// Every node of `xs` is d-separated from every node of `ys` by `z`.
/// The three sets must be pairwise disjoint.
pub fn d_separated_sets(
    dag: &Dag,
    xs: &BTreeSet<Iri>,
    ys: &BTreeSet<Iri>,
    z: &BTreeSet<Iri>,
) -> Result<bool, InferenceError> {
    let xm = dag.mask_of(xs)?;
    let ym = dag.mask_of(ys)?;
    let zm = dag.mask_of(z)?;
    if (0..dag.len()).any(|i| (xm[i] as u8 + ym[i] as u8 + zm[i] as u8) > 1) {
        return Err(InferenceError::OverlappingSets);
    }
    let reach = reachable(dag, &xm, &zm);
    Ok(!(0..dag.len()).any(|i| ym[i] && reach[i]))
}

/// Nodes reachable from `sources` along active trails given `z` (Bayes ball).
pub(crate) fn reachable(dag: &Dag, sources: &Mask, z: &Mask) -> Mask {
    let n = dag.len();
    let anc_z = dag.ancestors_mask(z);
    // visited[i][0]: arrived from a child (moving up); visited[i][1]: from a parent (moving down).
    let mut visited = vec![[false; 2]; n];
    let mut out = vec![false; n];
    let mut stack: Vec<(usize, bool)> = (0..n).filter(|&i| sources[i]).map(|i| (i, true)).collect();
    while let Some((v, up)) = stack.pop() {
        let slot = if up { 0 } else { 1 };
        if visited[v][slot] {
            continue;
        }
        visited[v][slot] = true;
        if !z[v] {
            out[v] = true;
        }
        if up {
            if !z[v] {
                stack.extend(dag.parent_idx(v).iter().map(|&p| (p, true)));
                stack.extend(dag.child_idx(v).iter().map(|&c| (c, false)));
            }
        } else {
            if !z[v] {
                stack.extend(dag.child_idx(v).iter().map(|&c| (c, false)));
            }
            if anc_z[v] {
                stack.extend(dag.parent_idx(v).iter().map(|&p| (p, true)));
            }
        }
    }
    out
}

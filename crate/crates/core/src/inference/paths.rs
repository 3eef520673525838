use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Dag, InferenceError};
use crate::term::Iri;

/// A simple path ignoring edge direction. `forward[i]` is true when the
/// edge between `nodes[i]` and `nodes[i + 1]` points from `nodes[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub nodes: Vec<Iri>,
    pub forward: Vec<bool>,
}

impl Path {
    /// Whether the path begins with an arrow into its first node.
    pub fn is_back_door(&self) -> bool {
        self.forward.first() == Some(&false)
    }

    pub fn is_directed(&self) -> bool {
        self.forward.iter().all(|f| *f)
    }
}

/// All simple paths between `x` and `y`, in a deterministic order.
pub fn enumerate_paths(dag: &Dag, x: &Iri, y: &Iri) -> Result<Vec<Path>, InferenceError> {
    let xi = dag.idx(x)?;
    let yi = dag.idx(y)?;
    if xi == yi {
        return Err(InferenceError::OverlappingSets);
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; dag.len()];
    let mut nodes = vec![xi];
    let mut forward = Vec::new();
    on_path[xi] = true;
    walk(dag, yi, &mut on_path, &mut nodes, &mut forward, &mut out);
    out.sort();
    Ok(out)
}

fn walk(
    dag: &Dag,
    target: usize,
    on_path: &mut [bool],
    nodes: &mut Vec<usize>,
    forward: &mut Vec<bool>,
    out: &mut Vec<Path>,
) {
    let here = *nodes.last().expect("non-empty");
    if here == target {
        out.push(Path { nodes: nodes.iter().map(|&i| dag.name(i).clone()).collect(), forward: forward.clone() });
        return;
    }
    let steps = dag.child_idx(here).iter().map(|&c| (c, true)).chain(dag.parent_idx(here).iter().map(|&p| (p, false)));
    for (next, fwd) in steps.collect::<Vec<_>>() {
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        nodes.push(next);
        forward.push(fwd);
        walk(dag, target, on_path, nodes, forward, out);
        forward.pop();
        nodes.pop();
        on_path[next] = false;
    }
}

/// Whether some interior node blocks the path given `z`: a chain or fork
/// node in `z`, or a collider with neither itself nor a descendant in `z`.
pub fn path_blocked(path: &Path, z: &BTreeSet<Iri>, dag: &Dag) -> bool {
    for i in 1..path.nodes.len().saturating_sub(1) {
        let node = &path.nodes[i];
        let into_from_left = path.forward[i - 1];
        let into_from_right = !path.forward[i];
        if into_from_left && into_from_right {
            let opened = dag
                .descendants(node)
                .map(|d| d.iter().any(|n| z.contains(n)))
                .unwrap_or(false);
            if !opened {
                return true;
            }
        } else if z.contains(node) {
            return true;
        }
    }
    false
}

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::InferenceError;
use crate::causal::{check_acyclic, CausalNetwork};
use crate::term::Iri;

/// A directed acyclic graph over IRIs, some of which may be latent.
///
/// Nodes are kept sorted; internally every node has a dense index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    names: Vec<Iri>,
    index: BTreeMap<Iri, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    latent: Vec<bool>,
}

pub(crate) type Mask = Vec<bool>;

impl Dag {
    /// Builds a DAG; every edge endpoint and latent must be in `nodes`.
    pub fn new(
        nodes: impl IntoIterator<Item = Iri>,
        edges: impl IntoIterator<Item = (Iri, Iri)>,
        latent: impl IntoIterator<Item = Iri>,
    ) -> Result<Self, InferenceError> {
        let names: Vec<Iri> = nodes.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<Iri, usize> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let n = names.len();
        let mut parents = vec![BTreeSet::new(); n];
        let mut children = vec![BTreeSet::new(); n];
        for (s, t) in edges {
            let si = *index.get(&s).ok_or(InferenceError::UnknownVariable(s))?;
            let ti = *index.get(&t).ok_or(InferenceError::UnknownVariable(t))?;
            parents[ti].insert(si);
            children[si].insert(ti);
        }
        let mut latent_mask = vec![false; n];
        for l in latent {
            let li = *index.get(&l).ok_or(InferenceError::UnknownVariable(l))?;
            latent_mask[li] = true;
        }
        let dag = Dag {
            names,
            index,
            parents: parents.into_iter().map(|s| s.into_iter().collect()).collect(),
            children: children.into_iter().map(|s| s.into_iter().collect()).collect(),
            latent: latent_mask,
        };
        if let Some(cycle) = dag.find_cycle() {
            return Err(InferenceError::CyclicGraph(cycle));
        }
        Ok(dag)
    }

    /// The causal edges of a network; fails on cycles.
    pub fn from_network(net: &CausalNetwork, latent: impl IntoIterator<Item = Iri>) -> Result<Self, InferenceError> {
        if let Some(cycle) = check_acyclic(net).cycle {
            return Err(InferenceError::CyclicGraph(cycle));
        }
        Dag::new(
            net.variables.iter().cloned(),
            net.edges.iter().map(|e| (e.source.clone(), e.target.clone())),
            latent,
        )
    }

    fn find_cycle(&self) -> Option<Vec<Iri>> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    queue.push(c);
                }
            }
        }
        if seen == n {
            return None;
        }
        // Walk parents among the remaining nodes until one repeats.
        let mut v = (0..n).find(|&i| indegree[i] > 0)?;
        let mut trail: Vec<usize> = Vec::new();
        loop {
            if let Some(pos) = trail.iter().position(|&t| t == v) {
                let mut cycle: Vec<Iri> = trail[pos..].iter().rev().map(|&i: &usize| self.names[i].clone()).collect();
                cycle.push(cycle[0].clone());
                return Some(cycle);
            }
            trail.push(v);
            v = *self.parents[v].iter().find(|&&p| indegree[p] > 0)?;
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> &[Iri] {
        &self.names
    }

    pub fn contains(&self, v: &Iri) -> bool {
        self.index.contains_key(v)
    }

    pub(crate) fn idx(&self, v: &Iri) -> Result<usize, InferenceError> {
        self.index.get(v).copied().ok_or_else(|| InferenceError::UnknownVariable(v.clone()))
    }

    pub(crate) fn name(&self, i: usize) -> &Iri {
        &self.names[i]
    }

    pub(crate) fn parent_idx(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub(crate) fn child_idx(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn parents(&self, v: &Iri) -> Result<BTreeSet<Iri>, InferenceError> {
        Ok(self.parents[self.idx(v)?].iter().map(|&i| self.names[i].clone()).collect())
    }

    pub fn children(&self, v: &Iri) -> Result<BTreeSet<Iri>, InferenceError> {
        Ok(self.children[self.idx(v)?].iter().map(|&i| self.names[i].clone()).collect())
    }

    pub fn edges(&self) -> Vec<(Iri, Iri)> {
        let mut out = Vec::new();
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                out.push((self.names[p].clone(), self.names[c].clone()));
            }
        }
        out.sort();
        out
    }

    pub fn is_latent(&self, v: &Iri) -> bool {
        self.index.get(v).is_some_and(|&i| self.latent[i])
    }

    pub fn latent(&self) -> BTreeSet<Iri> {
        self.names.iter().zip(&self.latent).filter(|(_, l)| **l).map(|(n, _)| n.clone()).collect()
    }

    pub fn observed(&self) -> BTreeSet<Iri> {
        self.names.iter().zip(&self.latent).filter(|(_, l)| !**l).map(|(n, _)| n.clone()).collect()
    }

    /// Nodes in a topological order (parents first; ties by IRI).
    pub fn topological_order(&self) -> Vec<Iri> {
        self.topo_idx().into_iter().map(|i| self.names[i].clone()).collect()
    }

    pub(crate) fn topo_idx(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            out.push(v);
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        out
    }

    pub(crate) fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a Iri>) -> Result<Mask, InferenceError> {
        let mut m = vec![false; self.len()];
        for v in set {
            m[self.idx(v)?] = true;
        }
        Ok(m)
    }

    pub(crate) fn names_of(&self, mask: &Mask) -> BTreeSet<Iri> {
        mask.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| self.names[i].clone()).collect()
    }

    /// The set plus every ancestor.
    pub(crate) fn ancestors_mask(&self, set: &Mask) -> Mask {
        self.closure(set, &self.parents)
    }

    /// The set plus every descendant.
    pub(crate) fn descendants_mask(&self, set: &Mask) -> Mask {
        self.closure(set, &self.children)
    }

    fn closure(&self, set: &Mask, step: &[Vec<usize>]) -> Mask {
        let mut out = set.clone();
        let mut stack: Vec<usize> = (0..self.len()).filter(|&i| set[i]).collect();
        while let Some(v) = stack.pop() {
            for &w in &step[v] {
                if !out[w] {
                    out[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    pub fn descendants(&self, v: &Iri) -> Result<BTreeSet<Iri>, InferenceError> {
        let m = self.mask_of([v])?;
        Ok(self.names_of(&self.descendants_mask(&m)))
    }

    pub fn ancestors(&self, v: &Iri) -> Result<BTreeSet<Iri>, InferenceError> {
        let m = self.mask_of([v])?;
        Ok(self.names_of(&self.ancestors_mask(&m)))
    }

    /// Copy without the edges entering `into` and the edges leaving `out_of`.
    pub(crate) fn mutilated(&self, into: &Mask, out_of: &Mask) -> Dag {
        let mut g = self.clone();
        for (c, ps) in g.parents.iter_mut().enumerate() {
            ps.retain(|&p| !into[c] && !out_of[p]);
        }
        for (p, cs) in g.children.iter_mut().enumerate() {
            cs.retain(|&c| !into[c] && !out_of[p]);
        }
        g
    }

    /// Copy without the edges entering the given nodes.
    pub fn without_incoming(&self, nodes: &BTreeSet<Iri>) -> Result<Dag, InferenceError> {
        let m = self.mask_of(nodes)?;
        Ok(self.mutilated(&m, &vec![false; self.len()]))
    }

    /// Copy without the edges leaving the given nodes.
    pub fn without_outgoing(&self, nodes: &BTreeSet<Iri>) -> Result<Dag, InferenceError> {
        let m = self.mask_of(nodes)?;
        Ok(self.mutilated(&vec![false; self.len()], &m))
    }

    /// Copy with the given nodes (and their edges) removed.
    pub(crate) fn without_nodes(&self, drop: &Mask) -> Dag {
        let edges = self
            .edges()
            .into_iter()
            .filter(|(s, t)| !drop[self.index[s]] && !drop[self.index[t]]);
        let nodes = self.names.iter().filter(|n| !drop[self.index[*n]]).cloned();
        let latent = self.latent().into_iter().filter(|n| !drop[self.index[n]]);
        Dag::new(nodes, edges.collect::<Vec<_>>(), latent).expect("subgraph of a DAG is a DAG")
    }
}

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::dsep::d_separated_sets;
use super::estimand::{DerivationStep, Expr, Var};
use super::{Dag, InferenceError};
use crate::term::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DoRule {
    /// Insertion or deletion of observations.
    One,
    /// Exchange of an intervention and an observation.
    Two,
    /// Insertion or deletion of interventions.
    Three,
}

impl DoRule {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(DoRule::One),
            2 => Some(DoRule::Two),
            3 => Some(DoRule::Three),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            DoRule::One => 1,
            DoRule::Two => 2,
            DoRule::Three => 3,
        }
    }
}

/// Graphical condition of a do-calculus rule for
/// `P(y | do(x), z, w)`:
///
/// 1. `(Y ⫫ Z | X, W)` with edges into X removed;
/// 2. the same with edges into X and edges out of Z removed;
/// 3. the same with edges into X and into Z(W) removed, where Z(W) are the
///    Z-nodes that are not ancestors of any W-node once edges into X are gone.
pub fn do_rule_applicable(
    dag: &Dag,
    rule: DoRule,
    y: &BTreeSet<Iri>,
    x: &BTreeSet<Iri>,
    z: &BTreeSet<Iri>,
    w: &BTreeSet<Iri>,
) -> Result<bool, InferenceError> {
    let sets = [y, x, z, w];
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(InferenceError::OverlappingSets);
            }
        }
    }
    let xm = dag.mask_of(x)?;
    let zm = dag.mask_of(z)?;
    let wm = dag.mask_of(w)?;
    dag.mask_of(y)?;
    let none = vec![false; dag.len()];
    let graph = match rule {
        DoRule::One => dag.mutilated(&xm, &none),
        DoRule::Two => dag.mutilated(&xm, &zm),
        DoRule::Three => {
            let g_x = dag.mutilated(&xm, &none);
            let anc_w = g_x.ancestors_mask(&wm);
            let z_w: Vec<bool> = (0..dag.len()).map(|i| zm[i] && !anc_w[i]).collect();
            let into: Vec<bool> = (0..dag.len()).map(|i| xm[i] || z_w[i]).collect();
            dag.mutilated(&into, &none)
        }
    };
    let mut cond = x.clone();
    cond.extend(w.iter().cloned());
    d_separated_sets(&graph, y, z, &cond)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Query {
    y: BTreeSet<Iri>,
    x: BTreeSet<Iri>,
    w: BTreeSet<Iri>,
}

type Solution = Option<(Expr, Vec<DerivationStep>)>;

/// Bounded search for a do-free rewrite of `P(y | do(x), w)` using the three
/// rules and conditioning expansion over one observed variable.
pub(crate) struct DoSearch<'a> {
    dag: &'a Dag,
    memo: BTreeMap<Query, (usize, Solution)>,
}

impl<'a> DoSearch<'a> {
    pub(crate) fn new(dag: &'a Dag) -> Self {
        Self { dag, memo: BTreeMap::new() }
    }

    pub(crate) fn solve(
        &mut self,
        y: &BTreeSet<Iri>,
        x: &BTreeSet<Iri>,
        w: &BTreeSet<Iri>,
        depth: usize,
    ) -> Result<Solution, InferenceError> {
        let q = Query { y: y.clone(), x: x.clone(), w: w.clone() };
        self.go(&q, depth)
    }

    fn go(&mut self, q: &Query, depth: usize) -> Result<Solution, InferenceError> {
        if q.x.is_empty() {
            let e = Expr::prob(q.y.iter().cloned().map(Var::new), q.w.iter().cloned().map(Var::new));
            return Ok(Some((e, Vec::new())));
        }
        if depth == 0 {
            return Ok(None);
        }
        if let Some((d, sol)) = self.memo.get(q) {
            if sol.is_some() || *d >= depth {
                return Ok(sol.clone());
            }
        }
        let result = self.expand(q, depth)?;
        self.memo.insert(q.clone(), (depth, result.clone()));
        Ok(result)
    }

    fn expand(&mut self, q: &Query, depth: usize) -> Result<Solution, InferenceError> {
        let dag = self.dag;
        for xi in &q.x {
            let rest: BTreeSet<Iri> = q.x.iter().filter(|v| *v != xi).cloned().collect();
            let one: BTreeSet<Iri> = [xi.clone()].into_iter().collect();
            if do_rule_applicable(dag, DoRule::Three, &q.y, &rest, &one, &q.w)? {
                let sub = Query { y: q.y.clone(), x: rest.clone(), w: q.w.clone() };
                if let Some((e, mut steps)) = self.go(&sub, depth - 1)? {
                    steps.insert(0, DerivationStep { rule: 3, detail: format!("delete do({})", xi.local_name()) });
                    return Ok(Some((e, steps)));
                }
            }
            if !dag.is_latent(xi) && do_rule_applicable(dag, DoRule::Two, &q.y, &rest, &one, &q.w)? {
                let mut w = q.w.clone();
                w.insert(xi.clone());
                let sub = Query { y: q.y.clone(), x: rest.clone(), w };
                if let Some((e, mut steps)) = self.go(&sub, depth - 1)? {
                    steps.insert(
                        0,
                        DerivationStep { rule: 2, detail: format!("exchange do({0}) for {0}", xi.local_name()) },
                    );
                    return Ok(Some((e, steps)));
                }
            }
        }
        for wi in &q.w {
            let rest: BTreeSet<Iri> = q.w.iter().filter(|v| *v != wi).cloned().collect();
            let one: BTreeSet<Iri> = [wi.clone()].into_iter().collect();
            if do_rule_applicable(dag, DoRule::One, &q.y, &q.x, &one, &rest)? {
                let sub = Query { y: q.y.clone(), x: q.x.clone(), w: rest };
                if let Some((e, mut steps)) = self.go(&sub, depth - 1)? {
                    steps.insert(0, DerivationStep { rule: 1, detail: format!("delete observation {}", wi.local_name()) });
                    return Ok(Some((e, steps)));
                }
            }
        }
        if depth < 2 {
            return Ok(None);
        }
        for v in dag.observed() {
            if q.y.contains(&v) || q.x.contains(&v) || q.w.contains(&v) {
                continue;
            }
            let mut w_v = q.w.clone();
            w_v.insert(v.clone());
            let outcome = Query { y: q.y.clone(), x: q.x.clone(), w: w_v };
            let Some((e1, s1)) = self.go(&outcome, depth - 1)? else { continue };
            let one: BTreeSet<Iri> = [v.clone()].into_iter().collect();
            let weight = Query { y: one, x: q.x.clone(), w: q.w.clone() };
            let Some((e2, s2)) = self.go(&weight, depth - 1)? else { continue };
            let mut steps = vec![DerivationStep { rule: 0, detail: format!("condition on {}", v.local_name()) }];
            steps.extend(s1);
            steps.extend(s2);
            return Ok(Some((Expr::sum([Var::new(v)], Expr::product([e1, e2])), steps)));
        }
        Ok(None)
    }
}

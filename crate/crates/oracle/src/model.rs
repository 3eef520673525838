/// Discrete Bayesian network: `cpt[v][row][value]`, rows indexed by parent
/// values with the first parent most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Bn {
    pub card: Vec<usize>,
    pub parents: Vec<Vec<usize>>,
    pub cpt: Vec<Vec<Vec<f64>>>,
}

impl Bn {
    pub fn n(&self) -> usize {
        self.card.len()
    }

    fn row(&self, v: usize, a: &[usize]) -> usize {
        self.parents[v].iter().fold(0, |acc, &p| acc * self.card[p] + a[p])
    }

    /// Chain-rule probability of a full assignment.
    pub fn prob(&self, a: &[usize]) -> f64 {
        (0..self.n()).map(|v| self.cpt[v][self.row(v, a)][a[v]]).product()
    }

    /// Every full assignment.
    pub fn assignments(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &k in &self.card {
            out = out.into_iter().flat_map(|a| (0..k).map(move |x| {
                let mut b = a.clone();
                b.push(x);
                b
            })).collect();
        }
        out
    }

    /// Mutilated model with `v` forced to `value`.
    pub fn intervene(&self, v: usize, value: usize) -> Bn {
        let mut out = self.clone();
        out.parents[v].clear();
        let mut point = vec![0.0; self.card[v]];
        point[value] = 1.0;
        out.cpt[v] = vec![point];
        out
    }

    pub fn intervene_all(&self, fixed: &[(usize, usize)]) -> Bn {
        fixed.iter().fold(self.clone(), |m, &(v, x)| m.intervene(v, x))
    }

    /// `P(target | evidence)` as a table over the target's values; `None`
    /// when the evidence has probability zero.
    pub fn query(&self, target: usize, evidence: &[(usize, usize)]) -> Option<Vec<f64>> {
        let mut out = vec![0.0; self.card[target]];
        let mut total = 0.0;
        for a in self.assignments() {
            if evidence.iter().all(|&(v, x)| a[v] == x) {
                let p = self.prob(&a);
                out[a[target]] += p;
                total += p;
            }
        }
        if total == 0.0 {
            return None;
        }
        Some(out.into_iter().map(|p| p / total).collect())
    }

    pub fn probability(&self, event: &[(usize, usize)]) -> f64 {
        self.assignments().into_iter().filter(|a| event.iter().all(|&(v, x)| a[v] == x)).map(|a| self.prob(&a)).sum()
    }

    /// Counterfactual by an explicit twin network. Parentless variables are
    /// shared between the worlds; every other variable is copied into the
    /// counterfactual world, where intervened copies become constants.
    pub fn twin_counterfactual(
        &self,
        evidence: &[(usize, usize)],
        intervention: &[(usize, usize)],
        query: usize,
    ) -> Option<Vec<f64>> {
        let n = self.n();
        let mut twin = self.clone();
        let cf = |v: usize| n + v;
        for v in 0..n {
            twin.card.push(self.card[v]);
            if let Some(&(_, x)) = intervention.iter().find(|(w, _)| *w == v) {
                let mut point = vec![0.0; self.card[v]];
                point[x] = 1.0;
                twin.parents.push(Vec::new());
                twin.cpt.push(vec![point]);
            } else if self.parents[v].is_empty() {
                // Copy of the shared root.
                twin.parents.push(vec![v]);
                twin.cpt.push((0..self.card[v]).map(|x| {
                    let mut r = vec![0.0; self.card[v]];
                    r[x] = 1.0;
                    r
                }).collect());
            } else {
                twin.parents.push(self.parents[v].iter().map(|&p| cf(p)).collect());
                twin.cpt.push(self.cpt[v].clone());
            }
        }
        twin.query(cf(query), evidence)
    }
}

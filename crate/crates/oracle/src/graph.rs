use std::collections::BTreeSet;

/// Directed graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { n, edges }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn parents(&self, v: usize) -> Vec<usize> {
        let mut p: Vec<usize> = self.edges.iter().filter(|e| e.1 == v).map(|e| e.0).collect();
        p.sort();
        p
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.edges.iter().filter(|e| e.0 == v).map(|e| e.1).collect();
        c.sort();
        c
    }

    /// `v` and everything reachable from it.
    pub fn descendants(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if !seen[u] {
                seen[u] = true;
                stack.extend(self.children(u));
            }
        }
        seen
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.parents(v).len()).collect();
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = ready.pop() {
            order.push(v);
            for c in self.children(v) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    fn adjacent(&self, v: usize) -> Vec<usize> {
        let mut a: Vec<usize> = self.parents(v);
        a.extend(self.children(v));
        a
    }

    /// Every simple path from `x` to `y`, ignoring edge direction.
    pub fn simple_paths(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![x];
        let mut on = vec![false; self.n];
        on[x] = true;
        self.extend_paths(y, &mut path, &mut on, &mut out);
        out
    }

    fn extend_paths(&self, y: usize, path: &mut Vec<usize>, on: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == y {
            out.push(path.clone());
            return;
        }
        for next in self.adjacent(last) {
            if !on[next] {
                on[next] = true;
                path.push(next);
                self.extend_paths(y, path, on, out);
                path.pop();
                on[next] = false;
            }
        }
    }

    /// Open given `z`: no non-collider in `z`, and every collider has itself
    /// or a descendant in `z`.
    pub fn path_open(&self, path: &[usize], z: &[bool]) -> bool {
        for i in 1..path.len().saturating_sub(1) {
            let (a, b, c) = (path[i - 1], path[i], path[i + 1]);
            let collider = self.has_edge(a, b) && self.has_edge(c, b);
            if collider {
                let desc = self.descendants(b);
                if !(0..self.n).any(|w| desc[w] && z[w]) {
                    return false;
                }
            } else if z[b] {
                return false;
            }
        }
        true
    }

    pub fn d_separated(&self, x: usize, y: usize, z: &[bool]) -> bool {
        self.simple_paths(x, y).iter().all(|p| !self.path_open(p, z))
    }

    pub fn d_separated_sets(&self, xs: &[usize], ys: &[usize], z: &[bool]) -> bool {
        xs.iter().all(|&x| ys.iter().all(|&y| x != y && self.d_separated(x, y, z)))
    }

    /// The back-door criterion read literally: no member of `z` descends
    /// from `x`, and every path into `x` is blocked by `z`.
    pub fn backdoor_valid(&self, x: usize, y: usize, z: &[bool]) -> bool {
        let desc = self.descendants(x);
        if (0..self.n).any(|w| z[w] && desc[w]) {
            return false;
        }
        self.simple_paths(x, y)
            .iter()
            .filter(|p| p.len() > 1 && self.has_edge(p[1], x))
            .all(|p| !self.path_open(p, z))
    }

    /// Graph with every edge into a node of `cut` removed.
    pub fn without_incoming(&self, cut: &[bool]) -> Graph {
        Graph::new(self.n, self.edges.iter().copied().filter(|&(_, b)| !cut[b]).collect())
    }

    pub fn without_outgoing(&self, cut: &[bool]) -> Graph {
        Graph::new(self.n, self.edges.iter().copied().filter(|&(a, _)| !cut[a]).collect())
    }

    fn permuted(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        e.sort();
        e
    }

    /// Smallest edge list over all relabelings.
    pub fn canonical(&self) -> Vec<(usize, usize)> {
        let mut best: Option<Vec<(usize, usize)>> = None;
        for perm in permutations(self.n) {
            let e = self.permuted(&perm);
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
        best.unwrap_or_default()
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every isomorphism class of DAGs on `n` nodes.
pub fn all_dags(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for &(a, b) in &pairs {
            match c % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            c /= 3;
        }
        let g = Graph::new(n, edges);
        if !g.is_acyclic() {
            continue;
        }
        if seen.insert(g.canonical()) {
            out.push(g);
        }
    }
    out
}

/// Subsets of `0..n` as membership vectors, skipping any touching `exclude`.
pub fn subsets(n: usize, exclude: &[usize]) -> Vec<Vec<bool>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| exclude.iter().all(|&e| !s[e]))
        .collect()
}

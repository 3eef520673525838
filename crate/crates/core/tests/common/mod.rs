//! Shared by the integration suites here and by the `acceptance` target of
//! the `semgrid` crate. Each check returns a one-line summary or the first
//! disagreement found.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semgrid_core::causal::{build_causal_map, check_acyclic, classify_junctions, universal_causal_statements};
use semgrid_core::fdo::{export_nested, import_nanopub, ExportOptions};
use semgrid_core::inference::{
    backdoor_sets, d_separated_sets, do_rule_applicable, frontdoor_check, Dag, DoRule, DEFAULT_MAX_ADJUSTMENT_SIZE,
};
use semgrid_core::logic::{categorize, check_satisfies, derive_entailed, StatementCategory};
use semgrid_core::nquads::{parse_nquads, write_nquads};
use semgrid_core::scm::{
    counterfactual, estimate_backdoor, estimate_frontdoor, mediation_effects, Cpt, CounterfactualQuery,
    DiscreteSCM,
};
use semgrid_core::units::{SemanticUnit, StatementUnit};
use semgrid_core::{vocab, Iri, KnowledgeGraph, Quad, QuadStore, Triple};
use semgrid_oracle::graph::{all_dags, subsets};
use semgrid_oracle::{Bn, Graph};

pub type Check = Result<String, String>;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn var(i: usize) -> Iri {
    Iri::new(format!("urn:v:n{i:02}")).unwrap()
}

pub fn set_of(idx: impl IntoIterator<Item = usize>) -> BTreeSet<Iri> {
    idx.into_iter().map(var).collect()
}

fn mask_set(mask: &[bool]) -> BTreeSet<Iri> {
    set_of((0..mask.len()).filter(|&i| mask[i]))
}

fn mask(n: usize, idx: &[usize]) -> Vec<bool> {
    (0..n).map(|i| idx.contains(&i)).collect()
}

pub fn to_dag(g: &Graph, latent: &[usize]) -> Dag {
    Dag::new((0..g.n).map(var), g.edges.iter().map(|&(a, b)| (var(a), var(b))), latent.iter().map(|&l| var(l))).unwrap()
}

/// Random DAG: a shuffled order, then each forward pair with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Graph::new(n, edges)
}

fn random_row(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn one_hot(k: usize, at: usize) -> Vec<f64> {
    let mut r = vec![0.0; k];
    r[at] = 1.0;
    r
}

/// Positive tables everywhere, or, with `deterministic`, random functions
/// for every variable that has parents.
pub fn random_bn(rng: &mut ChaCha8Rng, g: &Graph, card: &[usize], deterministic: bool) -> Bn {
    let parents: Vec<Vec<usize>> = (0..g.n).map(|v| g.parents(v)).collect();
    let cpt = (0..g.n)
        .map(|v| {
            let rows: usize = parents[v].iter().map(|&p| card[p]).product();
            (0..rows)
                .map(|_| {
                    if deterministic && !parents[v].is_empty() {
                        one_hot(card[v], rng.gen_range(0..card[v]))
                    } else {
                        random_row(rng, card[v])
                    }
                })
                .collect()
        })
        .collect();
    Bn { card: card.to_vec(), parents, cpt }
}

pub fn label(x: usize) -> String {
    x.to_string()
}

pub fn to_scm(bn: &Bn, latent: &[usize]) -> DiscreteSCM {
    let domains = (0..bn.n()).map(|v| (var(v), (0..bn.card[v]).map(label).collect())).collect();
    let cpts = (0..bn.n()).map(|v| Cpt::new(var(v), bn.parents[v].iter().map(|&p| var(p)).collect(), bn.cpt[v].clone())).collect();
    DiscreteSCM::new(domains, cpts, latent.iter().map(|&l| var(l)), BTreeMap::new()).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn dsep_agrees(g: &Graph, dag: &Dag, x: usize, y: usize, z: &[bool]) -> Result<(), String> {
    let oracle = g.d_separated(x, y, z);
    let ours = d_separated_sets(dag, &set_of([x]), &set_of([y]), &mask_set(z)).map_err(|e| e.to_string())?;
    if oracle != ours {
        return Err(format!("{:?}: {x} vs {y} given {:?}: oracle {oracle}, engine {ours}", g.edges, mask_set(z)));
    }
    Ok(())
}

/// Every DAG on up to five nodes (one per isomorphism class), every pair,
/// every conditioning set.
pub fn dsep_exhaustive() -> Check {
    let mut counts = Vec::new();
    let mut queries = 0usize;
    for n in 1..=5 {
        let dags = all_dags(n);
        counts.push(dags.len());
        for g in &dags {
            let dag = to_dag(g, &[]);
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    for z in subsets(n, &[x, y]) {
                        dsep_agrees(g, &dag, x, y, &z)?;
                        queries += 1;
                    }
                }
            }
        }
    }
    if counts != [1, 2, 6, 31, 302] {
        return Err(format!("isomorphism classes per size {counts:?}"));
    }
    Ok(format!("{} DAGs up to isomorphism, {queries} queries", counts.iter().sum::<usize>()))
}

/// Random DAGs on 6 to 8 nodes; every pair with a few random conditioning sets.
pub fn dsep_random(count: usize) -> Check {
    let mut r = rng(0xd5e9);
    let mut queries = 0usize;
    for _ in 0..count {
        let n = r.gen_range(6..=8);
        let p = r.gen_range(0.15..0.5);
        let g = random_graph(&mut r, n, p);
        let dag = to_dag(&g, &[]);
        for x in 0..n {
            for y in x + 1..n {
                for _ in 0..4 {
                    let z: Vec<bool> = (0..n).map(|i| i != x && i != y && r.gen_bool(0.3)).collect();
                    dsep_agrees(&g, &dag, x, y, &z)?;
                    queries += 1;
                }
            }
        }
    }
    Ok(format!("{count} random DAGs, {queries} queries"))
}

fn p_do(bn: &Bn, x: usize, value: usize, y: usize) -> Vec<f64> {
    bn.intervene(x, value).query(y, &[]).unwrap()
}

/// Random binary models on 3 to 6 nodes: every returned back-door set
/// reproduces surgery and loses validity when any member is dropped.
pub fn backdoor_soundness(needed: usize) -> Check {
    let mut r = rng(0xbac4);
    let mut models = 0usize;
    let mut sets = 0usize;
    let mut worst = 0.0f64;
    let mut attempts = 0usize;
    while models < needed {
        attempts += 1;
        if attempts > needed * 50 {
            return Err(format!("only {models} models with an adjustment set"));
        }
        let n = r.gen_range(3..=6);
        let g = random_graph(&mut r, n, 0.5);
        let order = g.topological_order().unwrap();
        let xi = r.gen_range(0..n - 1);
        let x = order[xi];
        let y = order[r.gen_range(xi + 1..n)];
        if !g.descendants(x)[y] {
            continue;
        }
        let dag = to_dag(&g, &[]);
        let found = backdoor_sets(&dag, &var(x), &var(y), DEFAULT_MAX_ADJUSTMENT_SIZE).map_err(|e| e.to_string())?;
        if found.is_empty() {
            continue;
        }
        let bn = random_bn(&mut r, &g, &vec![2; n], false);
        let scm = to_scm(&bn, &[]);
        models += 1;
        for s in &found {
            sets += 1;
            let idx: Vec<usize> = (0..n).filter(|&i| s.variables.contains(&var(i))).collect();
            if !g.backdoor_valid(x, y, &mask(n, &idx)) {
                return Err(format!("{:?}: {idx:?} is not a back-door set for {x} -> {y}", g.edges));
            }
            for drop in &idx {
                let smaller: Vec<usize> = idx.iter().copied().filter(|i| i != drop).collect();
                if g.backdoor_valid(x, y, &mask(n, &smaller)) {
                    return Err(format!("{:?}: {idx:?} is not minimal, {smaller:?} suffices", g.edges));
                }
            }
            let est = estimate_backdoor(&scm, &var(x), &var(y), &s.variables).map_err(|e| e.to_string())?;
            for v in 0..2 {
                let d = max_diff(est.row(&label(v)).unwrap(), &p_do(&bn, x, v, y));
                worst = worst.max(d);
                if d > 1e-12 {
                    return Err(format!("{:?}: adjusting for {idx:?} is off by {d:e}", g.edges));
                }
            }
        }
    }
    Ok(format!("{models} models, {sets} sets, max error {worst:.1e}"))
}

/// U latent confounding X and Y, X acting on Y only through mediators.
pub fn frontdoor_soundness(needed: usize) -> Check {
    let mut r = rng(0xf40d);
    let mut worst = 0.0f64;
    for case in 0..needed {
        // 0 = U, 1 = X, 2.. = mediators, last = Y.
        let k = 1 + case % 2;
        let n = k + 3;
        let y = n - 1;
        let mut edges = vec![(0, 1), (0, y)];
        for m in 2..2 + k {
            edges.push((1, m));
            edges.push((m, y));
        }
        if k == 2 && r.gen_bool(0.5) {
            edges.push((2, 3));
        }
        let g = Graph::new(n, edges);
        let card: Vec<usize> = (0..n).map(|_| r.gen_range(2..=3)).collect();
        let bn = random_bn(&mut r, &g, &card, false);
        let scm = to_scm(&bn, &[0]);
        let dag = scm.dag();
        let m = frontdoor_check(dag, &var(1), &var(y))
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{:?}: no front-door set found", g.edges))?;
        let est = estimate_frontdoor(&scm, &var(1), &var(y), &m).map_err(|e| e.to_string())?;
        for v in 0..card[1] {
            let d = max_diff(est.row(&label(v)).unwrap(), &p_do(&bn, 1, v, y));
            worst = worst.max(d);
            if d > 1e-12 {
                return Err(format!("{:?}: front-door estimate off by {d:e}", g.edges));
            }
        }
    }
    Ok(format!("{needed} models, max error {worst:.1e}"))
}

/// Rule 2 licensing P(y | do(x), w) = P(y | x, w) and rule 3 licensing
/// P(y | do(x), w) = P(y | w), checked numerically whenever licensed.
pub fn do_rules(count: usize) -> Check {
    let mut r = rng(0xd0c4);
    let (mut rule2, mut rule3, mut worst) = (0usize, 0usize, 0.0f64);
    for _ in 0..count {
        let n = r.gen_range(3..=6);
        let g = random_graph(&mut r, n, 0.4);
        let dag = to_dag(&g, &[]);
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut r);
        let (x, y) = (nodes[0], nodes[1]);
        let w: Vec<usize> = nodes[2..].iter().copied().filter(|_| r.gen_bool(0.35)).collect();
        let card: Vec<usize> = vec![2; n];
        let bn = random_bn(&mut r, &g, &card, false);
        let empty = BTreeSet::new();
        let ys = set_of([y]);
        let xs = set_of([x]);
        let ws = set_of(w.iter().copied());
        let w_values: Vec<Vec<(usize, usize)>> = (0..1usize << w.len())
            .map(|bits| w.iter().enumerate().map(|(i, &v)| (v, bits >> i & 1)).collect())
            .collect();
        let err = |e: semgrid_core::inference::InferenceError| e.to_string();
        if do_rule_applicable(&dag, DoRule::Two, &ys, &empty, &xs, &ws).map_err(err)? {
            rule2 += 1;
            for ev in &w_values {
                for v in 0..2 {
                    let done = bn.intervene(x, v).query(y, ev).unwrap();
                    let mut seen = ev.clone();
                    seen.push((x, v));
                    let d = max_diff(&done, &bn.query(y, &seen).unwrap());
                    worst = worst.max(d);
                    if d > 1e-12 {
                        return Err(format!("{:?}: rule 2 for {x} -> {y} given {w:?} off by {d:e}", g.edges));
                    }
                }
            }
        }
        if do_rule_applicable(&dag, DoRule::Three, &ys, &empty, &xs, &ws).map_err(err)? {
            rule3 += 1;
            for ev in &w_values {
                let plain = bn.query(y, ev).unwrap();
                for v in 0..2 {
                    let d = max_diff(&bn.intervene(x, v).query(y, ev).unwrap(), &plain);
                    worst = worst.max(d);
                    if d > 1e-12 {
                        return Err(format!("{:?}: rule 3 for {x} -> {y} given {w:?} off by {d:e}", g.edges));
                    }
                }
            }
        }
    }
    if rule2 == 0 || rule3 == 0 {
        return Err(format!("vacuous: rule 2 fired {rule2} times, rule 3 {rule3} times"));
    }
    Ok(format!("{count} DAGs, rule 2 licensed {rule2}, rule 3 licensed {rule3}, max error {worst:.1e}"))
}

/// Abduction, action and prediction against an explicit twin network.
pub fn counterfactual_twin(needed: usize) -> Check {
    let mut r = rng(0xc0f7);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < needed {
        let n = r.gen_range(3..=5);
        let g = random_graph(&mut r, n, 0.5);
        let card: Vec<usize> = (0..n).map(|_| r.gen_range(2..=3)).collect();
        let bn = random_bn(&mut r, &g, &card, true);
        let scm = to_scm(&bn, &[]);
        // Evidence drawn from an assignment with positive mass.
        let support: Vec<Vec<usize>> = bn.assignments().into_iter().filter(|a| bn.prob(a) > 0.0).collect();
        let world = support.choose(&mut r).unwrap();
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut r);
        let target = nodes[0];
        let x = nodes[1];
        let xv = r.gen_range(0..card[x]);
        let evidence: Vec<(usize, usize)> = nodes[1..].iter().filter(|_| r.gen_bool(0.6)).map(|&v| (v, world[v])).collect();
        let mut q = CounterfactualQuery::new(var(target)).set(var(x), label(xv));
        for &(v, val) in &evidence {
            q = q.observe(var(v), label(val));
        }
        let ours = counterfactual(&scm, &q).map_err(|e| e.to_string())?;
        let oracle = bn.twin_counterfactual(&evidence, &[(x, xv)], target).unwrap();
        let d = max_diff(ours.mass(), &oracle);
        worst = worst.max(d);
        if d > 1e-12 {
            return Err(format!("{:?}: do({x}={xv}) given {evidence:?}, query {target}: off by {d:e}", g.edges));
        }
        done += 1;
    }
    // U -> X -> Y copies; seeing X = Y = 1 then setting X = 0 forces Y = 0.
    let copy = Bn {
        card: vec![2, 2, 2],
        parents: vec![vec![], vec![0], vec![1]],
        cpt: vec![vec![vec![0.5, 0.5]], vec![one_hot(2, 0), one_hot(2, 1)], vec![one_hot(2, 0), one_hot(2, 1)]],
    };
    let q = CounterfactualQuery::new(var(2)).observe(var(1), "1").observe(var(2), "1").set(var(1), "0");
    let d = counterfactual(&to_scm(&copy, &[0]), &q).map_err(|e| e.to_string())?;
    if d.mass() != [1.0, 0.0] {
        return Err(format!("copy model gives {:?}", d.mass()));
    }
    Ok(format!("{needed} models, max error {worst:.1e}, copy model point mass on Y=0"))
}

/// C -> M -> Y with C -> Y, binary, mediator and outcome tables given.
fn mediation_model(m_rows: Vec<Vec<f64>>, y_rows: Vec<Vec<f64>>, c1: f64) -> Bn {
    Bn {
        card: vec![2, 2, 2],
        parents: vec![vec![], vec![0], vec![0, 1]],
        cpt: vec![vec![vec![1.0 - c1, c1]], m_rows, y_rows],
    }
}

fn b(p: f64) -> Vec<f64> {
    vec![1.0 - p, p]
}

pub fn mediation(count: usize) -> Check {
    let mut r = rng(0x3ed1);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let c1 = r.gen_range(0.1..0.9);
        let pm = r.gen_range(0.05..0.95);
        let flat_m = mediation_model(vec![b(pm), b(pm)], (0..4).map(|_| b(r.gen_range(0.05..0.95))).collect(), c1);
        let res = mediation_effects(&to_scm(&flat_m, &[]), &var(0), &var(1), &var(2), "0", "1").map_err(|e| e.to_string())?;
        if res.nie != 0.0 {
            return Err(format!("cause-independent mediator gives NIE {}", res.nie));
        }
        let (y0, y1) = (r.gen_range(0.05..0.95), r.gen_range(0.05..0.95));
        let flat_y = mediation_model(
            vec![b(r.gen_range(0.05..0.95)), b(r.gen_range(0.05..0.95))],
            vec![b(y0), b(y1), b(y0), b(y1)],
            c1,
        );
        let res = mediation_effects(&to_scm(&flat_y, &[]), &var(0), &var(1), &var(2), "0", "1").map_err(|e| e.to_string())?;
        if res.nde != 0.0 {
            return Err(format!("cause-independent outcome gives NDE {}", res.nde));
        }
        // No interaction: P(Y=1 | c, m) = a + d c + e m.
        let a = r.gen_range(0.25..0.35);
        let dc = r.gen_range(-0.1..0.3);
        let em = r.gen_range(-0.1..0.3);
        let p = |c: f64, m: f64| a + dc * c + em * m;
        let add = mediation_model(
            vec![b(r.gen_range(0.05..0.95)), b(r.gen_range(0.05..0.95))],
            vec![b(p(0.0, 0.0)), b(p(0.0, 1.0)), b(p(1.0, 0.0)), b(p(1.0, 1.0))],
            c1,
        );
        let res = mediation_effects(&to_scm(&add, &[]), &var(0), &var(1), &var(2), "0", "1").map_err(|e| e.to_string())?;
        let te = p_do(&add, 0, 1, 2)[1] - p_do(&add, 0, 0, 2)[1];
        let d = (te - res.te).abs().max((te - res.nde - res.nie).abs());
        worst = worst.max(d);
        if d > 1e-9 {
            return Err(format!("TE {te} against NDE {} + NIE {}", res.nde, res.nie));
        }
    }
    Ok(format!("{count} fixtures per case, max TE gap {worst:.1e}"))
}

pub fn load_store(file: &str) -> QuadStore {
    let text = std::fs::read_to_string(fixtures().join(file)).unwrap();
    let mut store = QuadStore::new();
    for q in parse_nquads(&text).unwrap() {
        store.insert(q);
    }
    store
}

fn eco(local: &str) -> Iri {
    Iri::new(format!("https://example.org/eco/{local}")).unwrap()
}

pub fn fig9_reproduction() -> Check {
    let kg = KnowledgeGraph::deterministic(load_store("fig9.nq"));
    let statements = universal_causal_statements(&kg);
    let net = build_causal_map(&statements).map_err(|e| e.to_string())?;
    let acyclic = check_acyclic(&net).acyclic;
    if net.variables.len() != 4 || net.edges.len() != 4 || !acyclic {
        return Err(format!("{} nodes, {} edges, acyclic {acyclic}", net.variables.len(), net.edges.len()));
    }
    let got: BTreeSet<String> = classify_junctions(&net)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|j| format!("{}({},{},{})", j.kind.as_str(), j.v1.local_name(), j.v2.local_name(), j.v3.local_name()))
        .collect();
    let want: BTreeSet<String> =
        ["chain(ND,FIT,IS)", "chain(ND,CS,IS)", "fork(CS,ND,FIT)", "collider(CS,IS,FIT)"].into_iter().map(String::from).collect();
    if got != want {
        return Err(format!("junctions {got:?}"));
    }
    Ok("4 nodes, 4 edges, acyclic, 2 chains + fork + collider".into())
}

fn obo(id: &str) -> Iri {
    Iri::new(format!("http://purl.obolibrary.org/obo/{id}")).unwrap()
}

fn quantified(res: Iri, class: Iri, marker: Option<Iri>) -> Vec<Triple> {
    let mut t = vec![Triple::new(res.clone(), vocab::rdf_type(), class)];
    if let Some(m) = marker {
        t.push(Triple::new(res, vocab::rdf_type(), m));
    }
    t
}

/// Subject, predicate, object with the subject and object quantified as given.
fn statement(tag: &str, s: Iri, p: Iri, o: Iri, universal: bool) -> Vec<Triple> {
    let sr = Iri::new(format!("https://example.org/res/{tag}-s")).unwrap();
    let or = Iri::new(format!("https://example.org/res/{tag}-o")).unwrap();
    let (sm, om) = if universal {
        (Some(vocab::su_every_instance_resource()), Some(vocab::su_some_instance_resource()))
    } else {
        (None, None)
    };
    let mut t = quantified(sr.clone(), s, sm);
    t.extend(quantified(or.clone(), o, om));
    t.push(Triple::new(sr, p, or));
    t
}

fn mint(kg: &mut KnowledgeGraph, triples: &[Triple], universal: bool) -> Result<StatementUnit, String> {
    let class = if universal { vocab::su_universal_statement_unit() } else { vocab::su_assertional_statement_unit() };
    kg.mint_statement_unit(triples, &[class], &[]).map_err(|e| e.to_string())
}

pub fn logic_cascade() -> Check {
    let mut kg = KnowledgeGraph::deterministic(load_store("fig9.nq"));
    let overlaps = obo("RO_0002131");
    let wetland_area = obo("ENVO_00000043");
    let wetland_eco = obo("ENVO_01001209");
    let regulates = vocab::ro_negatively_regulates_characteristic();
    let u6 = mint(&mut kg, &statement("u6", wetland_area.clone(), overlaps.clone(), wetland_eco.clone(), true), true)?;
    let a7 = mint(&mut kg, &statement("a7", wetland_area.clone(), overlaps.clone(), wetland_eco.clone(), false), false)?;
    let fig6 = mint(&mut kg, &statement("fig6", eco("CS"), regulates.clone(), eco("IS"), true), true)?;
    let a15 = mint(&mut kg, &statement("a15", eco("CS"), regulates.clone(), eco("IS"), false), false)?;

    let universals = kg.units_of_class(&vocab::su_universal_statement_unit());
    let mut twins = 0;
    for u in &universals {
        for t in derive_entailed(&mut kg, u).map_err(|e| e.to_string())? {
            let cat = categorize(&t).map_err(|e| e.to_string())?;
            if !t.has_class(&cat.class()) {
                return Err(format!("twin {} is classed against its content", t.id));
            }
            twins += 1;
        }
        let got: Vec<StatementCategory> =
            derive_entailed(&mut kg, u).map_err(|e| e.to_string())?.iter().map(|t| categorize(t).unwrap()).collect();
        if got != [StatementCategory::Prototypical, StatementCategory::Contingent] {
            return Err(format!("{u} entails {got:?}"));
        }
    }
    if universals.len() != 6 {
        return Err(format!("{} universal units", universals.len()));
    }
    for (a, u) in [(&a7, &u6), (&a15, &fig6)] {
        if check_satisfies(a, u) != Ok(true) {
            return Err(format!("{} does not satisfy {}", a.id, u.id));
        }
    }
    let wrong = mint(&mut kg, &statement("a7x", wetland_area, obo("RO_0002220"), wetland_eco, false), false)?;
    let wrong15 = mint(&mut kg, &statement("a15x", eco("CS"), obo("RO_0019001"), eco("IS"), false), false)?;
    for (a, u) in [(&wrong, &u6), (&wrong15, &fig6)] {
        if check_satisfies(a, u) != Ok(false) {
            return Err(format!("mutated {} still satisfies {}", a.id, u.id));
        }
    }
    Ok(format!("{} universal units, {twins} twins, satisfaction and mutations as expected", universals.len()))
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = ["fig9.nq", "measurement.nq", "golden/corpus.nq"].iter().map(|f| fixtures().join(f)).collect();
    files.sort();
    files
}

fn unit_signature(u: &SemanticUnit) -> (Iri, BTreeSet<Triple>, BTreeSet<Iri>, Vec<Iri>) {
    match u {
        SemanticUnit::Statement(s) => {
            (s.id.clone(), s.triples().into_iter().collect(), s.unit_classes.iter().cloned().collect(), Vec::new())
        }
        SemanticUnit::Compound(c) => (c.id.clone(), BTreeSet::new(), c.unit_classes.iter().cloned().collect(), c.members.clone()),
    }
}

pub fn round_trips() -> Check {
    let mut quads_seen = 0;
    for f in corpus_files() {
        let text = std::fs::read_to_string(&f).map_err(|e| e.to_string())?;
        let first: BTreeSet<Quad> = parse_nquads(&text).map_err(|e| e.to_string())?.into_iter().collect();
        let written = write_nquads(&first);
        let second: BTreeSet<Quad> = parse_nquads(&written).map_err(|e| e.to_string())?.into_iter().collect();
        if first != second || write_nquads(&second) != written {
            return Err(format!("{} does not round-trip", f.display()));
        }
        quads_seen += first.len();
    }

    let mut kg = KnowledgeGraph::deterministic(load_store("fig9.nq"));
    let mut net = build_causal_map(&universal_causal_statements(&kg)).map_err(|e| e.to_string())?;
    let map = semgrid_core::causal::persist_causal_map(&mut kg, &mut net).map_err(|e| e.to_string())?;
    let mut units = 0;
    for id in kg.unit_ids() {
        let original = kg.unit(&id).map_err(|e| e.to_string())?;
        let bundle = export_nested(&kg, &id, &ExportOptions::default()).map_err(|e| e.to_string())?;
        let quads: Vec<Quad> = bundle.iter().flat_map(|np| np.all_quads().cloned()).collect();
        let text = write_nquads(&quads);
        let reparsed = parse_nquads(&text).map_err(|e| e.to_string())?;
        let imported = import_nanopub(&reparsed).map_err(|e| e.to_string())?;
        let back = imported.iter().find(|u| u.id() == &id).ok_or_else(|| format!("{id} missing after import"))?;
        let mut want = unit_signature(&original);
        if let SemanticUnit::Compound(_) = original {
            want.1 = BTreeSet::new();
        }
        if unit_signature(back) != want {
            return Err(format!("{id} changed across export and import"));
        }
        if id == map && bundle.len() != 5 {
            return Err(format!("map bundle holds {} nanopubs", bundle.len()));
        }
        units += 1;
    }
    Ok(format!("{quads_seen} corpus quads, {units} units, nested map bundle of 5 nanopubs"))
}

/// Runs a check as a test.
pub fn assert_check(check: Check) {
    match check {
        Ok(summary) => println!("{summary}"),
        Err(e) => panic!("{e}"),
    }
}

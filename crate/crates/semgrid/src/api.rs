//! Operations shared by the CLI and the HTTP service. Every function takes
//! a parsed request and returns the JSON payload both front ends emit.

use std::collections::{BTreeMap, BTreeSet};

use semgrid_core::causal::{
    build_causal_map, causal_statement, check_acyclic, classify_junctions, compose_chain, extract_perspective,
    load_causal_map, persist_causal_map, persist_junction, persist_perspective, universal_causal_statements,
    CausalNetwork, ContextFilter, PerspectiveUnit,
};
use semgrid_core::fdo::{export_nested, ExportOptions};
use semgrid_core::inference::{backdoor_sets, d_separated_sets, frontdoor_check, identify_effect_bounded, Dag};
use semgrid_core::nquads::parse_nquads;
use semgrid_core::scm::{
    build_potential_outcome_unit, canonical_form, counterfactual, estimate_backdoor, estimate_frontdoor,
    evaluate_estimand, is_deterministic_form, mediation_effects, CounterfactualQuery, Distribution,
};
use semgrid_core::inference::{backdoor_expr, frontdoor_expr};
use semgrid_core::units::{primary_triple, render_dynamic_label, validate_shape, SemanticUnit, Shape, StatementUnit, UnitKind};
use semgrid_core::{vocab, Iri, KnowledgeGraph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::ApiError;
use crate::formats::{
    distribution_json, effect_table_json, estimand_json, junction_json, labels_json, network_json, parse_term,
    perspective_json, quads_text, NamedScm, ScmSpec,
};
use crate::workspace::Workspace;

/// Pretty JSON with a trailing newline: the exact bytes both front ends send.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn iri(s: &str) -> Result<Iri, ApiError> {
    Ok(Iri::new(s)?)
}

fn unknown_variable(name: &str) -> ApiError {
    ApiError::domain("UNKNOWN_VARIABLE", format!("unknown variable {name}"))
}

/// Finds a map variable by IRI, local name or label.
pub fn resolve_variable(kg: &KnowledgeGraph, vars: &BTreeSet<Iri>, name: &str) -> Result<Iri, ApiError> {
    if let Some(v) = vars.iter().find(|v| v.as_str() == name) {
        return Ok(v.clone());
    }
    let hits: Vec<&Iri> = vars.iter().filter(|v| v.local_name() == name || kg.label_of(v) == name).collect();
    match hits.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(unknown_variable(name)),
        _ => Err(ApiError::domain("AMBIGUOUS_VARIABLE", format!("{name} matches {} variables", hits.len()))),
    }
}

fn resolve_all(kg: &KnowledgeGraph, vars: &BTreeSet<Iri>, names: &[String]) -> Result<BTreeSet<Iri>, ApiError> {
    names.iter().map(|n| resolve_variable(kg, vars, n)).collect()
}

fn local(v: &Iri) -> String {
    v.local_name().to_string()
}

pub fn list_maps(ws: &Workspace) -> Value {
    let mut ids = ws.kg.units_of_class(&vocab::su_causal_network_compound_unit());
    ids.sort();
    json!({ "maps": ids.iter().map(Iri::as_str).collect::<Vec<_>>() })
}

pub fn load_map(ws: &Workspace, id: &str) -> Result<CausalNetwork, ApiError> {
    let id = iri(id)?;
    let is_map = ws
        .kg
        .compound_unit(&id)
        .map(|c| c.has_class(&vocab::su_causal_network_compound_unit()))
        .unwrap_or(false);
    if !is_map {
        return Err(ApiError::not_found("UNKNOWN_MAP", format!("no causal map {id}")));
    }
    Ok(load_causal_map(&ws.kg, &id)?)
}

pub fn get_map(ws: &Workspace, id: &str) -> Result<Value, ApiError> {
    let net = load_map(ws, id)?;
    Ok(network_json(&ws.kg, &net, check_acyclic(&net).acyclic))
}

fn map_dag(ws: &Workspace, net: &CausalNetwork, latent: &[String]) -> Result<Dag, ApiError> {
    let latent = resolve_all(&ws.kg, &net.variables, latent)?;
    Ok(Dag::from_network(net, latent)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestRequest {
    pub nquads: String,
    #[serde(default)]
    pub build_map: bool,
}

/// Adds quads to the store; optionally builds a causal map over every
/// universal causal statement afterwards.
pub fn ingest(ws: &mut Workspace, req: &IngestRequest) -> Result<Value, ApiError> {
    let quads = parse_nquads(&req.nquads)?;
    let before: BTreeSet<Iri> = ws.kg.unit_ids().into_iter().collect();
    let mut added = 0;
    for q in quads {
        if ws.kg.store_mut().insert(q) {
            added += 1;
        }
    }
    let new_units: Vec<Iri> = ws.kg.unit_ids().into_iter().filter(|u| !before.contains(u)).collect();
    let map = if req.build_map { Some(persist_universal_map(ws)?) } else { None };
    Ok(json!({
        "quads_added": added,
        "units": new_units.iter().map(Iri::as_str).collect::<Vec<_>>(),
        "map": map.as_ref().map(Iri::as_str),
    }))
}

fn persist_universal_map(ws: &mut Workspace) -> Result<Iri, ApiError> {
    let statements = universal_causal_statements(&ws.kg);
    if statements.is_empty() {
        return Err(ApiError::domain("NO_CAUSAL_STATEMENTS", "the store holds no universal causal statement units"));
    }
    let mut net = build_causal_map(&statements)?;
    Ok(persist_causal_map(&mut ws.kg, &mut net)?)
}

pub fn build_map(ws: &mut Workspace) -> Result<Value, ApiError> {
    let id = persist_universal_map(ws)?;
    get_map(ws, id.as_str())
}

/// What `compose --from` reads: a chain of two causal statements, or a
/// compound unit over existing members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComposeRequest {
    Chain { chain: [String; 2] },
    Compound {
        members: Vec<String>,
        classes: Vec<String>,
    },
}

pub fn compose(ws: &mut Workspace, req: &ComposeRequest) -> Result<Value, ApiError> {
    match req {
        ComposeRequest::Chain { chain } => {
            let first = causal_statement(&ws.kg, &iri(&chain[0])?)?;
            let second = causal_statement(&ws.kg, &iri(&chain[1])?)?;
            let mut net = compose_chain(&ws.kg, &first, &second)?;
            let id = persist_causal_map(&mut ws.kg, &mut net)?;
            let mut out = network_json(&ws.kg, &net, check_acyclic(&net).acyclic);
            out["id"] = json!(id.as_str());
            out["substitutions"] = json!(net
                .substitutions
                .iter()
                .map(|s| json!({ "in_unit": s.in_unit.as_str(), "replaced": s.replaced.as_str(), "by": s.by.as_str() }))
                .collect::<Vec<_>>());
            Ok(out)
        }
        ComposeRequest::Compound { members, classes } => {
            let members = members.iter().map(|m| iri(m)).collect::<Result<Vec<_>, _>>()?;
            let classes = classes.iter().map(|c| iri(c)).collect::<Result<Vec<_>, _>>()?;
            let unit = ws.kg.mint_compound_unit(&members, &classes)?;
            Ok(json!({ "unit": unit.id.as_str(), "members": unit.members.iter().map(Iri::as_str).collect::<Vec<_>>() }))
        }
    }
}

pub fn junctions(ws: &Workspace, map: &str) -> Result<Value, ApiError> {
    let net = load_map(ws, map)?;
    let js = classify_junctions(&net)?;
    Ok(json!({
        "map": map,
        "junctions": js.iter().map(|j| junction_json(&ws.kg, j)).collect::<Vec<_>>(),
    }))
}

/// Classifies and stores every junction as a compound unit.
pub fn persist_junctions(ws: &mut Workspace, map: &str) -> Result<Value, ApiError> {
    let net = load_map(ws, map)?;
    let js = classify_junctions(&net)?;
    let mut out = Vec::new();
    for j in &js {
        let unit = persist_junction(&mut ws.kg, j)?;
        let mut v = junction_json(&ws.kg, j);
        v["unit"] = json!(unit.id.as_str());
        out.push(v);
    }
    Ok(json!({ "map": map, "junctions": out }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEntry {
    pub predicate: String,
    /// An N-Triples term: `<iri>` or a quoted literal.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerspectiveRequest {
    pub cause: String,
    pub effect: String,
    #[serde(default)]
    pub context: Vec<ContextEntry>,
    #[serde(default)]
    pub persist: bool,
}

fn perspective_unit(ws: &Workspace, map: &str, req: &PerspectiveRequest) -> Result<PerspectiveUnit, ApiError> {
    let net = load_map(ws, map)?;
    let cause = resolve_variable(&ws.kg, &net.variables, &req.cause)?;
    let effect = resolve_variable(&ws.kg, &net.variables, &req.effect)?;
    let filter = if req.context.is_empty() {
        None
    } else {
        let required = req
            .context
            .iter()
            .map(|c| Ok((iri(&c.predicate)?, parse_term(&c.value)?)))
            .collect::<Result<Vec<_>, ApiError>>()?;
        Some(ContextFilter::new(required))
    };
    Ok(extract_perspective(&net, &cause, &effect, filter.as_ref(), ws.kg.store())?)
}

pub fn perspective(ws: &Workspace, map: &str, req: &PerspectiveRequest) -> Result<Value, ApiError> {
    let p = perspective_unit(ws, map, req)?;
    let mut out = perspective_json(&ws.kg, &p);
    out["persisted"] = json!(false);
    Ok(out)
}

pub fn persist_perspective_request(ws: &mut Workspace, map: &str, req: &PerspectiveRequest) -> Result<Value, ApiError> {
    let p = perspective_unit(ws, map, req)?;
    persist_perspective(&mut ws.kg, &p)?;
    let mut out = perspective_json(&ws.kg, &p);
    out["persisted"] = json!(true);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsepRequest {
    pub map: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    #[serde(default)]
    pub given: Vec<String>,
}

pub fn dsep(ws: &Workspace, req: &DsepRequest) -> Result<Value, ApiError> {
    let net = load_map(ws, &req.map)?;
    let dag = map_dag(ws, &net, &[])?;
    let x = resolve_all(&ws.kg, &net.variables, &req.x)?;
    let y = resolve_all(&ws.kg, &net.variables, &req.y)?;
    let z = resolve_all(&ws.kg, &net.variables, &req.given)?;
    Ok(json!({ "d_separated": d_separated_sets(&dag, &x, &y, &z)? }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifyRequest {
    pub map: String,
    pub cause: String,
    pub effect: String,
    #[serde(default)]
    pub latent: Vec<String>,
}

pub fn identify(ws: &Workspace, req: &IdentifyRequest) -> Result<Value, ApiError> {
    let net = load_map(ws, &req.map)?;
    let dag = map_dag(ws, &net, &req.latent)?;
    let cause = resolve_variable(&ws.kg, &net.variables, &req.cause)?;
    let effect = resolve_variable(&ws.kg, &net.variables, &req.effect)?;
    let max = ws.config.max_adjustment_size;
    let est = identify_effect_bounded(&dag, &cause, &effect, max)?;
    let sets: Vec<Vec<String>> = backdoor_sets(&dag, &cause, &effect, max)?
        .into_iter()
        .filter(|s| s.minimal)
        .map(|s| s.variables.iter().map(local).collect())
        .collect();
    let mut out = json!({
        "map": req.map,
        "cause": local(&cause),
        "effect": local(&effect),
        "adjustment_sets": sets,
    });
    merge(&mut out, estimand_json(&est, &local));
    out["variables"] = json!(net.variables.iter().map(|v| (local(v), v.as_str())).collect::<BTreeMap<_, _>>());
    Ok(out)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRequest {
    pub scm: ScmSpec,
    /// `backdoor`, `frontdoor` or `identified`.
    pub method: String,
    pub cause: String,
    pub effect: String,
    #[serde(default)]
    pub adjust: Option<Vec<String>>,
    #[serde(default)]
    pub mediators: Option<Vec<String>>,
}

pub fn estimate(ws: &Workspace, req: &EstimateRequest) -> Result<Value, ApiError> {
    let named = req.scm.compile()?;
    let scm = &named.scm;
    let cause = named.iri(&req.cause)?;
    let effect = named.iri(&req.effect)?;
    let name = |v: &Iri| named.name(v);
    let names = |s: &BTreeSet<Iri>| s.iter().map(|v| named.name(v)).collect::<Vec<_>>();
    let lookup = |list: &[String]| list.iter().map(|n| named.iri(n)).collect::<Result<BTreeSet<_>, _>>();
    let mut out = json!({ "method": req.method, "cause": req.cause, "effect": req.effect });
    let (table, expr) = match req.method.as_str() {
        "backdoor" => {
            let z = match &req.adjust {
                Some(list) => lookup(list)?,
                None => backdoor_sets(scm.dag(), &cause, &effect, ws.config.max_adjustment_size)?
                    .into_iter()
                    .map(|s| s.variables)
                    .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())))
                    .ok_or_else(|| ApiError::domain("INVALID_ADJUSTMENT_SET", "no back-door set exists"))?,
            };
            out["adjustment"] = json!(names(&z));
            (estimate_backdoor(scm, &cause, &effect, &z)?, backdoor_expr(&cause, &effect, &z))
        }
        "frontdoor" => {
            let m = match &req.mediators {
                Some(list) => lookup(list)?,
                None => frontdoor_check(scm.dag(), &cause, &effect)?
                    .ok_or_else(|| ApiError::domain("INVALID_MEDIATOR_SET", "no front-door set exists"))?,
            };
            out["mediators"] = json!(names(&m));
            (estimate_frontdoor(scm, &cause, &effect, &m)?, frontdoor_expr(&cause, &effect, &m))
        }
        "identified" => {
            let est = identify_effect_bounded(scm.dag(), &cause, &effect, ws.config.max_adjustment_size)?;
            out["strategy"] = json!(est.strategy.as_str());
            let table = evaluate_estimand(scm, &est)?;
            (table, est.expr.expect("evaluated estimands have an expression"))
        }
        other => return Err(ApiError::usage(format!("unknown estimation method {other}"))),
    };
    out["estimand"] = json!(expr.render(&name));
    out["result"] = effect_table_json(&table, &name);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MediateRequest {
    pub scm: ScmSpec,
    pub cause: String,
    pub mediator: String,
    pub effect: String,
    #[serde(default)]
    pub baseline: Option<String>,
    #[serde(default)]
    pub treated: Option<String>,
}

pub fn mediate(req: &MediateRequest) -> Result<Value, ApiError> {
    let named = req.scm.compile()?;
    let cause = named.iri(&req.cause)?;
    let domain = named.scm.domain(&cause)?;
    let pick = |given: &Option<String>, i: usize| -> Result<String, ApiError> {
        match given {
            Some(v) => Ok(v.clone()),
            None => domain
                .get(i)
                .cloned()
                .ok_or_else(|| ApiError::domain("UNKNOWN_VALUE", format!("{} has fewer than two values", req.cause))),
        }
    };
    let baseline = pick(&req.baseline, 0)?;
    let treated = pick(&req.treated, 1)?;
    let r = mediation_effects(&named.scm, &cause, &named.iri(&req.mediator)?, &named.iri(&req.effect)?, &baseline, &treated)?;
    let [a, b, c] = r.assumptions_checked;
    Ok(json!({
        "cause": req.cause,
        "mediator": req.mediator,
        "effect": req.effect,
        "baseline": baseline,
        "treated": treated,
        "te": r.te,
        "nde": r.nde,
        "nie": r.nie,
        "assumptions": {
            "no_cause_outcome_confounding": a,
            "no_mediator_outcome_confounding": b,
            "no_confounder_affected_by_cause": c,
            "hold": r.assumptions_hold(),
        },
    }))
}

/// Links a what-if answer into the graph as a potential-outcome unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordRequest {
    pub observed_unit: String,
    pub universal_unit: String,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhatifRequest {
    pub scm: ScmSpec,
    #[serde(default)]
    pub observe: BTreeMap<String, String>,
    #[serde(rename = "do", default)]
    pub intervention: BTreeMap<String, String>,
    pub query: String,
    #[serde(default)]
    pub record: Option<RecordRequest>,
}

struct WhatifAnswer {
    named: NamedScm,
    result: Distribution,
    value: Value,
}

fn whatif_answer(req: &WhatifRequest) -> Result<WhatifAnswer, ApiError> {
    let named = req.scm.compile()?;
    let canonicalized = !is_deterministic_form(&named.scm);
    let model = if canonicalized { named.with_scm(canonical_form(&named.scm)?) } else { named.clone() };
    let mut q = CounterfactualQuery::new(model.iri(&req.query)?);
    q.evidence = model.assignment(&req.observe)?;
    q.intervention = model.assignment(&req.intervention)?;
    let result = counterfactual(&model.scm, &q)?;
    let value = json!({
        "query": req.query,
        "observe": req.observe,
        "do": req.intervention,
        "canonicalized": canonicalized,
        "distribution": distribution_json(&result, &|v| model.name(v)),
    });
    Ok(WhatifAnswer { named, result, value })
}

pub fn whatif(req: &WhatifRequest) -> Result<Value, ApiError> {
    if req.record.is_some() {
        return Err(ApiError::usage("recording a what-if answer needs write access"));
    }
    Ok(whatif_answer(req)?.value)
}

/// Answers and, when asked, stores the answer as a potential-outcome unit.
pub fn whatif_record(ws: &mut Workspace, req: &WhatifRequest) -> Result<Value, ApiError> {
    let WhatifAnswer { named, result, mut value } = whatif_answer(req)?;
    let Some(record) = &req.record else {
        return Ok(value);
    };
    let query = named.iri(&req.query)?;
    let bound = Distribution::from_entries(
        vec![named.scm.bound_node(&query)],
        result.domains().to_vec(),
        result.iter(),
    );
    let mut intervention = BTreeMap::new();
    for (k, v) in named.assignment(&req.intervention)? {
        intervention.insert(named.scm.bound_node(&k), v);
    }
    let unit = build_potential_outcome_unit(
        &mut ws.kg,
        &iri(&record.observed_unit)?,
        &bound,
        &iri(&record.universal_unit)?,
        &intervention,
        &iri(&record.method)?,
    )?;
    value["potential_outcome_unit"] = json!(unit.id.as_str());
    value["counterfactual_unit"] = json!(unit.members[1].as_str());
    Ok(value)
}

pub fn unit(ws: &Workspace, id: &str) -> Result<Value, ApiError> {
    let id = iri(id)?;
    let unit = ws.kg.unit(&id)?;
    let classes: Vec<&str> = unit.unit_classes().iter().map(Iri::as_str).collect();
    Ok(match &unit {
        SemanticUnit::Statement(u) => json!({
            "id": u.id.as_str(),
            "kind": "statement",
            "classes": classes,
            "content": quads_text(&u.content),
            "meta": quads_text(&u.meta),
        }),
        SemanticUnit::Compound(c) => json!({
            "id": c.id.as_str(),
            "kind": "compound",
            "classes": classes,
            "members": c.members.iter().map(Iri::as_str).collect::<Vec<_>>(),
            "meta": quads_text(&c.meta),
        }),
    })
}

fn statement_label(ws: &Workspace, u: &StatementUnit) -> (String, Option<Iri>) {
    for t in &ws.templates {
        let Some(shape) = ws.shapes.iter().find(|s| s.shape_id == t.shape_id) else { continue };
        if !validate_shape(u, shape).conforms() {
            continue;
        }
        if let Ok(label) = render_dynamic_label(u, t, ws.kg.store()) {
            return (label, Some(shape.shape_id.clone()));
        }
    }
    let text = match primary_triple(&u.content, None) {
        Some(t) => {
            let object = match t.object.as_iri() {
                Some(o) => ws.kg.label_of(o),
                None => t.object.as_literal().map(|l| l.lexical().to_string()).unwrap_or_default(),
            };
            let subject = ws
                .kg
                .store()
                .objects(&t.subject, &vocab::rdf_type(), Some(&u.id))
                .into_iter()
                .filter_map(|c| c.as_iri().cloned())
                .find(|c| !c.as_str().starts_with(vocab::SU))
                .map(|c| ws.kg.label_of(&c))
                .unwrap_or_else(|| ws.kg.label_of(&t.subject));
            format!("{} {} {}", subject, ws.kg.label_of(&t.predicate), object)
        }
        None => ws.kg.label_of(&u.id),
    };
    (text, None)
}

pub fn unit_label_text(ws: &Workspace, id: &Iri) -> Result<(String, Option<Iri>), ApiError> {
    Ok(match ws.kg.unit(id)? {
        SemanticUnit::Statement(u) => statement_label(ws, &u),
        SemanticUnit::Compound(c) => {
            let class = c.unit_classes.first().map(|c| c.local_name().to_string()).unwrap_or_default();
            let labelled = ws.kg.store().objects(id, &vocab::rdfs_label(), None);
            let text = match labelled.first().and_then(|t| t.as_literal()) {
                Some(l) => l.lexical().to_string(),
                None => format!("{class} of {} units", c.members.len()),
            };
            (text, None)
        }
    })
}

pub fn unit_label(ws: &Workspace, id: &str) -> Result<Value, ApiError> {
    let id = iri(id)?;
    let (label, shape) = unit_label_text(ws, &id)?;
    Ok(json!({ "id": id.as_str(), "label": label, "template": shape.as_ref().map(Iri::as_str) }))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateRequest {
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub all: bool,
    /// A shape identifier from the shapes directory.
    #[serde(default)]
    pub shape: Option<String>,
}

/// Without an explicit shape, a unit is checked against every shape whose
/// whitelist admits its primary predicate.
pub fn validate(ws: &Workspace, req: &ValidateRequest, extra: Option<&Shape>) -> Result<Value, ApiError> {
    let units: Vec<Iri> = match (&req.unit, req.all) {
        (Some(u), false) => vec![iri(u)?],
        (None, true) => {
            ws.kg.unit_ids().into_iter().filter(|u| ws.kg.unit_kind(u) == Some(UnitKind::Statement)).collect()
        }
        _ => return Err(ApiError::usage("give exactly one of a unit id or --all")),
    };
    let chosen: Option<&Shape> = match (extra, &req.shape) {
        (Some(s), _) => Some(s),
        (None, Some(id)) => Some(
            ws.shapes
                .iter()
                .find(|s| s.shape_id.as_str() == id)
                .ok_or_else(|| ApiError::not_found("UNKNOWN_SHAPE", format!("no shape {id}")))?,
        ),
        (None, None) => None,
    };
    let mut reports = Vec::new();
    let mut all_conform = true;
    for id in &units {
        let u = ws.kg.statement_unit(id)?;
        let shapes: Vec<&Shape> = match chosen {
            Some(s) => vec![s],
            None => {
                let primary = primary_triple(&u.content, None);
                ws.shapes
                    .iter()
                    .filter(|s| primary.as_ref().is_some_and(|t| s.predicate_whitelist.contains(&t.predicate)))
                    .collect()
            }
        };
        for s in shapes {
            let r = validate_shape(&u, s);
            all_conform &= r.conforms();
            reports.push(json!({
                "unit": r.unit.as_str(),
                "shape": r.shape.as_str(),
                "conforms": r.conforms(),
                "violations": r.violations.iter().map(|v| json!({
                    "constraint": v.constraint.as_str(),
                    "detail": v.detail,
                    "quad": v.quad.as_ref().map(|q| quads_text([q]).trim_end().to_string()),
                })).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(json!({ "conforms": all_conform, "reports": reports }))
}

/// Exports a unit (and, for compounds, its members) as nanopublications.
pub fn nanopub(ws: &Workspace, id: &str, prefix: Option<&str>) -> Result<Value, ApiError> {
    let id = iri(id)?;
    let mut opts = ExportOptions { created: ws.timestamp(), ..ExportOptions::default() };
    if let Some(p) = prefix {
        opts = opts.with_prefix(p)?;
    }
    let nps = export_nested(&ws.kg, &id, &opts)?;
    let quads: Vec<_> = nps.iter().flat_map(|n| n.all_quads()).collect();
    Ok(json!({
        "unit": id.as_str(),
        "nanopubs": nps.iter().map(|n| n.id.as_str()).collect::<Vec<_>>(),
        "nquads": quads_text(quads),
    }))
}

/// Label lookups for arbitrary IRIs, used by text rendering.
pub fn labels(ws: &Workspace, iris: &[Iri]) -> Value {
    labels_json(&ws.kg, iris)
}

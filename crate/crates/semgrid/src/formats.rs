//! JSON file formats and the JSON renderings of core results.

use std::collections::BTreeMap;

use semgrid_core::causal::{CausalNetwork, Junction, PerspectiveUnit};
use semgrid_core::inference::{Estimand, Expr, Var};
use semgrid_core::nquads::{parse_nquads, write_nquads};
use semgrid_core::scm::{Cpt, DiscreteSCM, Distribution, EffectTable};
use semgrid_core::units::{Anchor, LabelTemplate, ObjectKind, ResourceKind, Shape};
use semgrid_core::{Iri, KnowledgeGraph, Term};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::ApiError;

/// Namespace for SCM variables given by bare name.
pub const VARIABLE_NS: &str = "urn:semgrid:var:";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScmVariable {
    pub name: String,
    pub domain: Vec<String>,
    #[serde(default)]
    pub parents: Vec<String>,
    /// Rows keyed by the comma-joined parent values; `""` for a root.
    pub table: BTreeMap<String, Vec<f64>>,
}

/// A discrete SCM as written on disk or posted to the service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScmSpec {
    pub variables: Vec<ScmVariable>,
    #[serde(default)]
    pub latent: Vec<String>,
    /// Variable name to the causal-map variable class it stands for.
    #[serde(default)]
    pub binding: BTreeMap<String, String>,
}

/// A compiled SCM plus the names its variables were given.
#[derive(Debug, Clone)]
pub struct NamedScm {
    pub scm: DiscreteSCM,
    names: BTreeMap<Iri, String>,
    by_name: BTreeMap<String, Iri>,
}

fn variable_iri(name: &str) -> Result<Iri, ApiError> {
    if name.is_empty() {
        return Err(ApiError::usage("empty variable name"));
    }
    if name.contains(':') {
        if let Ok(iri) = Iri::new(name) {
            return Ok(iri);
        }
    }
    Ok(Iri::new(format!("{VARIABLE_NS}{name}"))?)
}

impl ScmSpec {
    pub fn compile(&self) -> Result<NamedScm, ApiError> {
        let mut by_name = BTreeMap::new();
        let mut names = BTreeMap::new();
        for v in &self.variables {
            let iri = variable_iri(&v.name)?;
            if by_name.insert(v.name.clone(), iri.clone()).is_some() {
                return Err(ApiError::usage(format!("variable {} declared twice", v.name)));
            }
            names.insert(iri, v.name.clone());
        }
        let lookup = |n: &str| {
            by_name.get(n).cloned().ok_or_else(|| ApiError::domain("UNKNOWN_VARIABLE", format!("unknown variable {n}")))
        };
        let domains: BTreeMap<Iri, Vec<String>> =
            self.variables.iter().map(|v| (by_name[&v.name].clone(), v.domain.clone())).collect();
        let mut cpts = Vec::new();
        for v in &self.variables {
            let parents = v.parents.iter().map(|p| lookup(p)).collect::<Result<Vec<_>, _>>()?;
            cpts.push(Cpt::from_keyed(by_name[&v.name].clone(), parents, &domains, &v.table)?);
        }
        let latent = self.latent.iter().map(|l| lookup(l)).collect::<Result<Vec<_>, _>>()?;
        let mut binding = BTreeMap::new();
        for (name, class) in &self.binding {
            binding.insert(lookup(name)?, Iri::new(class)?);
        }
        let scm = DiscreteSCM::new(domains, cpts, latent, binding)?;
        Ok(NamedScm { scm, names, by_name })
    }
}

impl NamedScm {
    pub fn iri(&self, name: &str) -> Result<Iri, ApiError> {
        self.by_name
            .get(name)
            .cloned()
            .ok_or_else(|| ApiError::domain("UNKNOWN_VARIABLE", format!("unknown variable {name}")))
    }

    /// Display name; generated variables fall back to `{name}-noise`-style
    /// local names.
    pub fn name(&self, v: &Iri) -> String {
        match self.names.get(v) {
            Some(n) => n.clone(),
            None => {
                let s = v.as_str();
                s.strip_prefix(VARIABLE_NS).map(str::to_string).unwrap_or_else(|| v.local_name().to_string())
            }
        }
    }

    pub fn with_scm(&self, scm: DiscreteSCM) -> NamedScm {
        NamedScm { scm, names: self.names.clone(), by_name: self.by_name.clone() }
    }

    pub fn assignment(&self, pairs: &BTreeMap<String, String>) -> Result<BTreeMap<Iri, String>, ApiError> {
        pairs.iter().map(|(k, v)| Ok((self.iri(k)?, v.clone()))).collect()
    }
}

/// `{"X=1": p, ...}` for a distribution over named variables.
pub fn distribution_json(d: &Distribution, name: &dyn Fn(&Iri) -> String) -> Value {
    let mut out = Map::new();
    for (values, p) in d.iter() {
        let key: Vec<String> = d
            .variables()
            .iter()
            .zip(d.domains())
            .zip(values)
            .map(|((v, dom), x)| format!("{}={}", name(v), dom[x]))
            .collect();
        out.insert(key.join(","), json!(p));
    }
    Value::Object(out)
}

/// `{"do(X=0)": {"Y=0": p, ...}, ...}`.
pub fn effect_table_json(t: &EffectTable, name: &dyn Fn(&Iri) -> String) -> Value {
    let mut out = Map::new();
    for (x, row) in t.cause_values.iter().zip(&t.rows) {
        let mut inner = Map::new();
        for (y, p) in t.effect_values.iter().zip(row) {
            inner.insert(format!("{}={}", name(&t.effect), y), json!(p));
        }
        out.insert(format!("do({}={})", name(&t.cause), x), Value::Object(inner));
    }
    Value::Object(out)
}

fn var_name(v: &Var, name: &dyn Fn(&Iri) -> String) -> String {
    let mut s = name(&v.node);
    for _ in 0..v.primes {
        s.push('\'');
    }
    s
}

pub fn expr_json(e: &Expr, name: &dyn Fn(&Iri) -> String) -> Value {
    let vars = |vs: &[Var]| Value::Array(vs.iter().map(|v| json!(var_name(v, name))).collect());
    match e {
        Expr::Prob { target, given } => json!({ "op": "prob", "target": vars(target), "given": vars(given) }),
        Expr::SumOver { vars: over, body } => json!({ "op": "sum", "vars": vars(over), "body": expr_json(body, name) }),
        Expr::Product(fs) => json!({ "op": "product", "factors": fs.iter().map(|f| expr_json(f, name)).collect::<Vec<_>>() }),
        Expr::Difference(a, b) => json!({ "op": "difference", "left": expr_json(a, name), "right": expr_json(b, name) }),
    }
}

pub fn estimand_json(e: &Estimand, name: &dyn Fn(&Iri) -> String) -> Value {
    let set = |s: &Option<std::collections::BTreeSet<Iri>>| match s {
        Some(s) => json!(s.iter().map(name).collect::<Vec<_>>()),
        None => Value::Null,
    };
    json!({
        "identified": e.is_identified(),
        "strategy": e.strategy.as_str(),
        "estimand": e.expr.as_ref().map(|x| x.render(name)),
        "expression": e.expr.as_ref().map(|x| expr_json(x, name)),
        "adjustment": set(&e.adjustment),
        "mediators": set(&e.mediators),
        "instruments": e.instruments.iter().map(name).collect::<Vec<_>>(),
        "derivation": e.derivation.iter().map(|s| json!({ "rule": s.rule, "detail": s.detail })).collect::<Vec<_>>(),
    })
}

pub fn labels_json<'a>(kg: &KnowledgeGraph, iris: impl IntoIterator<Item = &'a Iri>) -> Value {
    let labels: BTreeMap<&str, String> = iris.into_iter().map(|i| (i.as_str(), kg.label_of(i))).collect();
    json!(labels)
}

/// Adjacency rendering of a causal map.
pub fn network_json(kg: &KnowledgeGraph, net: &CausalNetwork, acyclic: bool) -> Value {
    let edge = |e: &semgrid_core::causal::Edge| {
        json!({
            "src": e.source.as_str(),
            "dst": e.target.as_str(),
            "unit": e.unit.as_str(),
            "predicate": e.predicate.as_str(),
            "polarity": e.polarity.as_str(),
        })
    };
    json!({
        "id": net.id.as_ref().map(Iri::as_str),
        "nodes": net.variables.iter().map(Iri::as_str).collect::<Vec<_>>(),
        "edges": net.edges.iter().map(edge).collect::<Vec<_>>(),
        "correlations": net.correlation_edges.iter().map(edge).collect::<Vec<_>>(),
        "acyclic": acyclic,
        "labels": labels_json(kg, &net.variables),
    })
}

pub fn junction_json(kg: &KnowledgeGraph, j: &Junction) -> Value {
    json!({
        "id": j.id.as_str(),
        "kind": j.kind.as_str(),
        "v1": j.v1.as_str(),
        "v2": j.v2.as_str(),
        "v3": j.v3.as_str(),
        "member_edges": [j.member_edges[0].as_str(), j.member_edges[1].as_str()],
        "text": format!("{}({},{},{})", j.kind.as_str(), kg.label_of(&j.v1), kg.label_of(&j.v2), kg.label_of(&j.v3)),
    })
}

pub fn term_text(t: &Term) -> String {
    let mut s = String::new();
    semgrid_core::nquads::write_term(&mut s, t);
    s
}

/// Parses one N-Triples term such as `<https://...>` or `"x"^^<...>`.
pub fn parse_term(text: &str) -> Result<Term, ApiError> {
    let line = format!("<urn:semgrid:s> <urn:semgrid:p> {} <urn:semgrid:g> .", text.trim());
    let quads = parse_nquads(&line).map_err(|e| ApiError::usage(format!("bad term {text}: {}", e.reason)))?;
    Ok(quads[0].object.clone())
}

pub fn perspective_json(kg: &KnowledgeGraph, p: &PerspectiveUnit) -> Value {
    let mut nodes = std::collections::BTreeSet::new();
    let paths: Vec<Value> = p
        .paths
        .iter()
        .map(|path| {
            nodes.extend(path.nodes.iter().cloned());
            json!({
                "nodes": path.nodes.iter().map(Iri::as_str).collect::<Vec<_>>(),
                "units": path.units.iter().map(Iri::as_str).collect::<Vec<_>>(),
                "forward": path.forward,
                "causal": path.causal,
            })
        })
        .collect();
    json!({
        "id": p.id.as_str(),
        "kind": p.kind.as_str(),
        "cause": p.focus_cause.as_str(),
        "effect": p.focus_effect.as_str(),
        "members": p.member_statements.iter().map(Iri::as_str).collect::<Vec<_>>(),
        "paths": paths,
        "annotations": p.annotations.iter().map(|(k, v)| json!({ "predicate": k.as_str(), "value": term_text(v) })).collect::<Vec<_>>(),
        "labels": labels_json(kg, &nodes),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectSpec {
    Resource { resource_kind: String },
    Literal { datatype: Option<String> },
}

/// A statement-unit shape as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub id: String,
    pub subject_kind: String,
    #[serde(default)]
    pub subject_class: Option<String>,
    pub predicates: Vec<String>,
    pub object: ObjectSpec,
    #[serde(default)]
    pub object_class: Option<String>,
    #[serde(default)]
    pub required_meta: Vec<String>,
}

fn resource_kind(s: &str) -> Result<ResourceKind, ApiError> {
    ResourceKind::parse(s).ok_or_else(|| ApiError::usage(format!("unknown resource kind {s}")).with_code("INVALID_SHAPE"))
}

impl ShapeSpec {
    pub fn compile(&self) -> Result<Shape, ApiError> {
        let object = match &self.object {
            ObjectSpec::Resource { resource_kind: k } => ObjectKind::Resource(resource_kind(k)?),
            ObjectSpec::Literal { datatype } => ObjectKind::Literal(datatype.as_deref().map(Iri::new).transpose()?),
        };
        let predicates = self.predicates.iter().map(Iri::new).collect::<Result<Vec<_>, _>>()?;
        let mut shape = Shape::new(Iri::new(&self.id)?, resource_kind(&self.subject_kind)?, predicates, object)?;
        if let Some(c) = &self.subject_class {
            shape = shape.with_subject_class(Iri::new(c)?);
        }
        if let Some(c) = &self.object_class {
            shape = shape.with_object_class(Iri::new(c)?);
        }
        let keys = self.required_meta.iter().map(Iri::new).collect::<Result<Vec<_>, _>>()?;
        Ok(shape.with_required_meta(keys))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub anchor: String,
    pub path: Vec<String>,
}

/// A dynamic-label template as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateSpec {
    pub shape: String,
    pub pattern: String,
    #[serde(default)]
    pub paths: BTreeMap<String, PathSpec>,
}

impl TemplateSpec {
    pub fn compile(&self) -> Result<LabelTemplate, ApiError> {
        let mut t = LabelTemplate::new(Iri::new(&self.shape)?, self.pattern.clone());
        for (hole, p) in &self.paths {
            let anchor = match p.anchor.as_str() {
                "subject" => Anchor::Subject,
                "object" => Anchor::Object,
                other => return Err(ApiError::usage(format!("unknown anchor {other}"))),
            };
            let path = p.path.iter().map(Iri::new).collect::<Result<Vec<_>, _>>()?;
            t = t.with_path(hole.clone(), anchor, path);
        }
        t.holes()?;
        Ok(t)
    }
}

/// Index written next to a nanopublication bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleIndex {
    pub unit: String,
    pub nanopubs: Vec<String>,
}

pub fn quads_text<'a>(quads: impl IntoIterator<Item = &'a semgrid_core::Quad>) -> String {
    write_nquads(quads)
}

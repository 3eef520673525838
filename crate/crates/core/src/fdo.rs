//! Nanopublication bundles: four named graphs per unit, nested bundles for
//! compound units, and the inverse import.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::id::sha256_hex;
use crate::term::{Iri, Literal, Quad, Term};
use crate::units::{meta_graph, CompoundUnit, KnowledgeGraph, SemanticUnit, StatementUnit, UnitError};
use crate::vocab;

/// Activity recorded as the generator of every exported assertion.
pub const EXPORT_ACTIVITY: &str = "https://w3id.org/semanticunits/vocab#nanopublicationExport";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdoError {
    #[error("malformed head: {0}")]
    MalformedHead(String),
    #[error("compound unit {0} contains itself")]
    CyclicComposition(Iri),
    #[error(transparent)]
    Unit(#[from] UnitError),
}

impl FdoError {
    pub fn code(&self) -> &'static str {
        match self {
            FdoError::MalformedHead(_) => "MALFORMED_HEAD",
            FdoError::CyclicComposition(_) => "CYCLIC_COMPOSITION",
            FdoError::Unit(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportOptions {
    /// Namespace for nanopublication identifiers, e.g. a DOI prefix.
    pub prefix: Option<String>,
    /// `xsd:dateTime` lexical form; omitted when `None`.
    pub created: Option<String>,
    pub exporter_version: String,
    pub license: Iri,
}

impl ExportOptions {
    /// Namespaces identifiers under `prefix`, which must start an absolute IRI.
    pub fn with_prefix(mut self, prefix: impl Into<String>) -> Result<Self, crate::term::TermError> {
        let prefix = prefix.into();
        Iri::new(format!("{prefix}0"))?;
        self.prefix = Some(prefix);
        Ok(self)
    }
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self {
            prefix: None,
            created: None,
            exporter_version: env!("CARGO_PKG_VERSION").to_string(),
            license: Iri::from_static("https://creativecommons.org/licenses/by/4.0/"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nanopub {
    pub id: Iri,
    pub head: BTreeSet<Quad>,
    pub assertion: BTreeSet<Quad>,
    pub provenance: BTreeSet<Quad>,
    pub pubinfo: BTreeSet<Quad>,
}

impl Nanopub {
    pub fn head_graph(&self) -> Iri {
        self.id.with_suffix("#Head")
    }

    pub fn all_quads(&self) -> impl Iterator<Item = &Quad> {
        self.head.iter().chain(&self.assertion).chain(&self.provenance).chain(&self.pubinfo)
    }

    /// Member nanopublications listed in the head, for nested bundles.
    pub fn members(&self) -> Vec<Iri> {
        self.head
            .iter()
            .filter(|q| q.predicate.as_str() == vocab::SU_HAS_MEMBER_NANOPUB)
            .filter_map(|q| q.object.as_iri().cloned())
            .collect()
    }
}

/// Identifier of the nanopublication that serializes `unit`.
pub fn nanopub_id(unit: &Iri, opts: &ExportOptions) -> Iri {
    let digest = sha256_hex(unit.as_str().as_bytes());
    match &opts.prefix {
        Some(p) => Iri::new(format!("{p}{}", &digest[..32])).expect("prefix checked by with_prefix"),
        None => crate::id::derived_iri("np", &[unit.as_str()]),
    }
}

fn frame(id: Iri, assertion_graph: &Iri, serialized: &Iri, opts: &ExportOptions) -> Nanopub {
    let head_g = id.with_suffix("#Head");
    let prov_g = id.with_suffix("#provenance");
    let info_g = id.with_suffix("#pubinfo");
    let mut head = BTreeSet::new();
    head.insert(Quad::new(id.clone(), vocab::rdf_type(), vocab::np_nanopublication(), head_g.clone()));
    head.insert(Quad::new(id.clone(), vocab::np_has_assertion(), assertion_graph.clone(), head_g.clone()));
    head.insert(Quad::new(id.clone(), vocab::np_has_provenance(), prov_g.clone(), head_g.clone()));
    head.insert(Quad::new(id.clone(), vocab::np_has_publication_info(), info_g.clone(), head_g));

    let mut pubinfo = BTreeSet::new();
    pubinfo.insert(Quad::new(id.clone(), vocab::su_serializes(), serialized.clone(), info_g.clone()));
    pubinfo.insert(Quad::new(
        id.clone(),
        vocab::su_exporter_version(),
        Literal::simple(opts.exporter_version.clone()),
        info_g.clone(),
    ));
    pubinfo.insert(Quad::new(id.clone(), vocab::dct_license(), opts.license.clone(), info_g.clone()));
    if let Some(ts) = &opts.created {
        pubinfo.insert(Quad::new(id.clone(), vocab::dct_created(), Literal::typed(ts.clone(), vocab::xsd_datetime()), info_g));
    }
    let mut provenance = BTreeSet::new();
    provenance.insert(Quad::new(serialized.clone(), vocab::prov_was_generated_by(), Iri::from_static(EXPORT_ACTIVITY), prov_g));
    Nanopub { id, head, assertion: BTreeSet::new(), provenance, pubinfo }
}

/// One nanopublication whose assertion graph is the unit's content graph.
pub fn export_nanopub(unit: &StatementUnit, opts: &ExportOptions) -> Nanopub {
    let id = nanopub_id(&unit.id, opts);
    let mut np = frame(id, &unit.id, &unit.id, opts);
    let prov_g = np.id.with_suffix("#provenance");
    np.assertion = unit.content.iter().map(|q| q.regraph(&unit.id)).collect();
    np.provenance.extend(unit.meta.iter().map(|q| q.regraph(&prov_g)));
    np.provenance.extend(
        unit.unit_classes.iter().map(|c| Quad::new(unit.id.clone(), vocab::rdf_type(), c.clone(), prov_g.clone())),
    );
    np
}

fn export_compound(compound: &CompoundUnit, member_nps: &[Iri], opts: &ExportOptions) -> Nanopub {
    let id = nanopub_id(&compound.id, opts);
    let assertion_g = id.with_suffix("#assertion");
    let mut np = frame(id, &assertion_g, &compound.id, opts);
    let prov_g = np.id.with_suffix("#provenance");
    let head_g = np.head_graph();
    np.provenance.extend(compound.meta.iter().map(|q| q.regraph(&prov_g)));
    np.provenance.extend(
        compound.unit_classes.iter().map(|c| Quad::new(compound.id.clone(), vocab::rdf_type(), c.clone(), prov_g.clone())),
    );
    for m in member_nps {
        np.head.insert(Quad::new(np.id.clone(), vocab::su_has_member_nanopub(), m.clone(), head_g.clone()));
    }
    np
}

/// Member nanopublications (depth first, each unit once) followed by the
/// nested nanopublication of `compound` itself.
pub fn export_nested(kg: &KnowledgeGraph, compound: &Iri, opts: &ExportOptions) -> Result<Vec<Nanopub>, FdoError> {
    let mut out = Vec::new();
    let mut done = BTreeSet::new();
    let mut stack = Vec::new();
    export_unit(kg, compound, opts, &mut out, &mut done, &mut stack)?;
    Ok(out)
}

fn export_unit(
    kg: &KnowledgeGraph,
    id: &Iri,
    opts: &ExportOptions,
    out: &mut Vec<Nanopub>,
    done: &mut BTreeSet<Iri>,
    stack: &mut Vec<Iri>,
) -> Result<Iri, FdoError> {
    if stack.contains(id) {
        return Err(FdoError::CyclicComposition(id.clone()));
    }
    if done.contains(id) {
        return Ok(nanopub_id(id, opts));
    }
    match kg.unit(id)? {
        SemanticUnit::Statement(s) => out.push(export_nanopub(&s, opts)),
        SemanticUnit::Compound(c) => {
            stack.push(id.clone());
            let mut members = Vec::with_capacity(c.members.len());
            for m in &c.members {
                members.push(export_unit(kg, m, opts, out, done, stack)?);
            }
            stack.pop();
            out.push(export_compound(&c, &members, opts));
        }
    }
    done.insert(id.clone());
    Ok(nanopub_id(id, opts))
}

struct Head {
    id: Iri,
    assertion: Iri,
    provenance: Iri,
    pubinfo: Iri,
    members: Vec<Iri>,
}

fn read_heads(quads: &[Quad]) -> Result<Vec<Head>, FdoError> {
    let mut ids: BTreeMap<Iri, Iri> = BTreeMap::new();
    for q in quads {
        let is_head_quad = q.predicate.as_str() == vocab::NP_HAS_ASSERTION
            || (q.predicate.as_str() == vocab::RDF_TYPE && q.object.as_iri().is_some_and(|o| o.as_str() == vocab::NP_NANOPUBLICATION));
        if is_head_quad {
            ids.insert(q.subject.clone(), q.graph.clone());
        }
    }
    if ids.is_empty() {
        return Err(FdoError::MalformedHead("no head graph found".into()));
    }
    let mut heads = Vec::new();
    for (id, head_g) in ids {
        let pick = |pred: &str| -> Result<Iri, FdoError> {
            let mut found = quads
                .iter()
                .filter(|q| q.graph == head_g && q.subject == id && q.predicate.as_str() == pred)
                .filter_map(|q| q.object.as_iri().cloned());
            let first = found.next().ok_or_else(|| FdoError::MalformedHead(format!("{id} lacks {pred}")))?;
            if found.next().is_some() {
                return Err(FdoError::MalformedHead(format!("{id} lists {pred} twice")));
            }
            Ok(first)
        };
        let members = quads
            .iter()
            .filter(|q| q.graph == head_g && q.subject == id && q.predicate.as_str() == vocab::SU_HAS_MEMBER_NANOPUB)
            .filter_map(|q| q.object.as_iri().cloned())
            .collect();
        heads.push(Head {
            assertion: pick(vocab::NP_HAS_ASSERTION)?,
            provenance: pick(vocab::NP_HAS_PROVENANCE)?,
            pubinfo: pick(vocab::NP_HAS_PUBLICATION_INFO)?,
            id,
            members,
        });
    }
    Ok(heads)
}

/// Rebuilds the units serialized by a bundle of nanopublications.
pub fn import_nanopub(quads: &[Quad]) -> Result<Vec<SemanticUnit>, FdoError> {
    let heads = read_heads(quads)?;
    let graphs: BTreeSet<&Iri> = quads.iter().map(|q| &q.graph).collect();
    let ids: BTreeSet<&Iri> = heads.iter().map(|h| &h.id).collect();
    let mut units = Vec::new();
    for h in &heads {
        let nested = !h.members.is_empty();
        for (name, g) in [("provenance", &h.provenance), ("pubinfo", &h.pubinfo)] {
            if !graphs.contains(g) {
                return Err(FdoError::MalformedHead(format!("{} lists missing {name} graph {g}", h.id)));
            }
        }
        if !nested && !graphs.contains(&h.assertion) {
            return Err(FdoError::MalformedHead(format!("{} lists missing assertion graph {}", h.id, h.assertion)));
        }
        for m in &h.members {
            if !ids.contains(m) {
                return Err(FdoError::MalformedHead(format!("{} lists missing member {m}", h.id)));
            }
        }
        let serialized = quads
            .iter()
            .find(|q| q.graph == h.pubinfo && q.subject == h.id && q.predicate.as_str() == vocab::SU_SERIALIZES)
            .and_then(|q| q.object.as_iri().cloned())
            .unwrap_or_else(|| h.assertion.clone());
        let meta_g = meta_graph(&serialized);
        let meta: BTreeSet<Quad> = quads
            .iter()
            .filter(|q| q.graph == h.provenance)
            .filter(|q| !(q.predicate.as_str() == vocab::PROV_WAS_GENERATED_BY && q.object == Term::Iri(Iri::from_static(EXPORT_ACTIVITY))))
            .map(|q| q.regraph(&meta_g))
            .collect();
        let classes: Vec<Iri> = {
            let mut c: Vec<Iri> = meta
                .iter()
                .filter(|q| q.subject == serialized && q.predicate.as_str() == vocab::RDF_TYPE)
                .filter_map(|q| q.object.as_iri().cloned())
                .filter(|c| c.as_str() != vocab::SU_STATEMENT_UNIT && c.as_str() != vocab::SU_COMPOUND_UNIT)
                .collect();
            c.sort();
            c.dedup();
            c
        };
        let is_compound = nested
            || meta.iter().any(|q| {
                q.subject == serialized
                    && (q.predicate.as_str() == vocab::SU_HAS_ASSOCIATED_UNIT
                        || q.object.as_iri().is_some_and(|o| o.as_str() == vocab::SU_COMPOUND_UNIT))
            });
        if is_compound {
            let mut indexed: Vec<(u64, Iri)> = meta
                .iter()
                .filter(|q| q.subject == serialized && q.predicate.as_str() == vocab::SU_HAS_ASSOCIATED_UNIT)
                .filter_map(|q| q.object.as_iri().cloned())
                .map(|m| {
                    let index = meta
                        .iter()
                        .find(|q| q.subject == m && q.predicate.as_str() == vocab::SU_MEMBER_INDEX)
                        .and_then(|q| q.object.as_literal().and_then(|l| l.lexical().parse().ok()))
                        .unwrap_or(u64::MAX);
                    (index, m)
                })
                .collect();
            indexed.sort();
            units.push(SemanticUnit::Compound(CompoundUnit {
                id: serialized,
                members: indexed.into_iter().map(|(_, m)| m).collect(),
                unit_classes: classes,
                meta,
            }));
        } else {
            let content = quads.iter().filter(|q| q.graph == h.assertion).map(|q| q.regraph(&serialized)).collect();
            units.push(SemanticUnit::Statement(StatementUnit { id: serialized, content, meta, unit_classes: classes }));
        }
    }
    Ok(units)
}

/// Imports a bundle into a knowledge graph: statement units first, then
/// compound units. Returns the imported unit identifiers.
pub fn import_into(kg: &mut KnowledgeGraph, quads: &[Quad]) -> Result<Vec<Iri>, FdoError> {
    let units = import_nanopub(quads)?;
    let mut ids = Vec::new();
    for u in &units {
        if let SemanticUnit::Statement(s) = u {
            kg.insert_statement_unit(s);
            ids.push(s.id.clone());
        }
    }
    for u in &units {
        if let SemanticUnit::Compound(c) = u {
            for m in &c.members {
                if kg.unit_kind(m).is_none() {
                    return Err(UnitError::DanglingMember(m.clone()).into());
                }
            }
            kg.insert_compound_unit(c);
            ids.push(c.id.clone());
        }
    }
    Ok(ids)
}

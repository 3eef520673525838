//! Semantic units: statement units (content graph + meta graph) and compound
//! units (meta graph referencing member units), stored in a [`QuadStore`].
//!
//! A statement unit's identifier is also the name of its content graph. The
//! meta graph of every unit is `{id}#meta`.

mod content;
mod label;
mod shape;

pub use content::{primary_triple, resource_kind, target_classes, ResourceKind};
pub use label::{render_dynamic_label, Anchor, LabelError, LabelTemplate};
pub use shape::{validate_shape, Constraint, ObjectKind, Shape, ShapeError, ValidationReport, Violation};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::id::{ContentHashMinter, IdMinter};
use crate::nquads::write_nquads;
use crate::store::QuadStore;
use crate::term::{Iri, Literal, Quad, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("statement unit content must not be empty")]
    EmptyContent,
    #[error("unit class {0} is neither built in nor declared")]
    UnknownUnitClass(Iri),
    #[error("compound unit member {0} does not resolve to a unit")]
    DanglingMember(Iri),
    #[error("compound unit needs at least one member")]
    EmptyMembers,
    #[error("compound unit {0} transitively contains itself")]
    CyclicComposition(Iri),
    #[error("no unit with id {0}")]
    UnknownUnit(Iri),
    #[error("{0} is not a statement unit")]
    NotAStatementUnit(Iri),
    #[error("{0} is not a compound unit")]
    NotACompoundUnit(Iri),
    #[error("statement unit requires at least one unit class")]
    NoUnitClass,
}

impl UnitError {
    pub fn code(&self) -> &'static str {
        match self {
            UnitError::EmptyContent => "EMPTY_CONTENT",
            UnitError::UnknownUnitClass(_) => "UNKNOWN_UNIT_CLASS",
            UnitError::DanglingMember(_) => "DANGLING_MEMBER",
            UnitError::EmptyMembers => "EMPTY_MEMBERS",
            UnitError::CyclicComposition(_) => "CYCLIC_COMPOSITION",
            UnitError::UnknownUnit(_) => "UNKNOWN_UNIT",
            UnitError::NotAStatementUnit(_) => "NOT_A_STATEMENT_UNIT",
            UnitError::NotACompoundUnit(_) => "NOT_A_COMPOUND_UNIT",
            UnitError::NoUnitClass => "NO_UNIT_CLASS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum UnitKind {
    Statement,
    Compound,
}

/// One proposition: content quads all named by `id`, metadata in `{id}#meta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementUnit {
    pub id: Iri,
    pub content: BTreeSet<Quad>,
    pub meta: BTreeSet<Quad>,
    pub unit_classes: Vec<Iri>,
}

impl StatementUnit {
    pub fn triples(&self) -> Vec<Triple> {
        self.content.iter().map(Quad::triple).collect()
    }

    pub fn has_class(&self, class: &Iri) -> bool {
        self.unit_classes.contains(class)
    }

    /// The first unit class that is not a statement-category class.
    pub fn content_type(&self) -> Option<&Iri> {
        self.unit_classes
            .iter()
            .find(|c| crate::logic::StatementCategory::from_class(c).is_none())
    }

    /// Objects of `id predicate ?o` in the meta graph.
    pub fn meta_values(&self, predicate: &Iri) -> Vec<&Term> {
        self.meta
            .iter()
            .filter(|q| q.subject == self.id && &q.predicate == predicate)
            .map(|q| &q.object)
            .collect()
    }
}

/// A collection of member units; owns no content of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundUnit {
    pub id: Iri,
    pub members: Vec<Iri>,
    pub unit_classes: Vec<Iri>,
    pub meta: BTreeSet<Quad>,
}

impl CompoundUnit {
    pub fn has_class(&self, class: &Iri) -> bool {
        self.unit_classes.contains(class)
    }

    pub fn meta_values(&self, predicate: &Iri) -> Vec<&Term> {
        self.meta
            .iter()
            .filter(|q| q.subject == self.id && &q.predicate == predicate)
            .map(|q| &q.object)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemanticUnit {
    Statement(StatementUnit),
    Compound(CompoundUnit),
}

impl SemanticUnit {
    pub fn id(&self) -> &Iri {
        match self {
            SemanticUnit::Statement(u) => &u.id,
            SemanticUnit::Compound(u) => &u.id,
        }
    }

    pub fn unit_classes(&self) -> &[Iri] {
        match self {
            SemanticUnit::Statement(u) => &u.unit_classes,
            SemanticUnit::Compound(u) => &u.unit_classes,
        }
    }

    pub fn kind(&self) -> UnitKind {
        match self {
            SemanticUnit::Statement(_) => UnitKind::Statement,
            SemanticUnit::Compound(_) => UnitKind::Compound,
        }
    }
}

pub fn meta_graph(unit_id: &Iri) -> Iri {
    unit_id.with_suffix("#meta")
}

fn is_marker_class(class: &Iri) -> bool {
    matches!(class.as_str(), vocab::SU_STATEMENT_UNIT | vocab::SU_COMPOUND_UNIT)
}

/// A quad store plus the identifier policy used when minting units.
pub struct KnowledgeGraph {
    store: QuadStore,
    minter: Box<dyn IdMinter + Send + Sync>,
}

impl core::fmt::Debug for KnowledgeGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("KnowledgeGraph").field("quads", &self.store.len()).finish()
    }
}

impl Default for KnowledgeGraph {
    fn default() -> Self {
        Self::deterministic(QuadStore::new())
    }
}

impl KnowledgeGraph {
    pub fn new(store: QuadStore, minter: Box<dyn IdMinter + Send + Sync>) -> Self {
        Self { store, minter }
    }

    /// Content-addressed identifiers.
    pub fn deterministic(store: QuadStore) -> Self {
        Self::new(store, Box::new(ContentHashMinter))
    }

    pub fn store(&self) -> &QuadStore {
        &self.store
    }

    pub fn store_mut(&mut self) -> &mut QuadStore {
        &mut self.store
    }

    pub fn into_store(self) -> QuadStore {
        self.store
    }

    pub fn mint_id(&mut self, canonical: &[u8]) -> Iri {
        self.minter.mint(canonical)
    }

    pub fn is_known_unit_class(&self, class: &Iri) -> bool {
        vocab::BUILTIN_UNIT_CLASSES.contains(&class.as_str())
            || !self
                .store
                .match_pattern(Some(class), Some(&vocab::rdfs_subclass_of()), None, Some(&vocab::vocabulary_graph()))
                .is_empty()
    }

    /// Declares a custom unit class as a subclass of `parent` (itself a unit class).
    pub fn declare_unit_class(&mut self, class: Iri, parent: Iri) -> Result<(), UnitError> {
        if !self.is_known_unit_class(&parent) {
            return Err(UnitError::UnknownUnitClass(parent));
        }
        self.store.insert(Quad::new(class, vocab::rdfs_subclass_of(), parent, vocab::vocabulary_graph()));
        Ok(())
    }

    pub fn unit_kind(&self, id: &Iri) -> Option<UnitKind> {
        let meta = meta_graph(id);
        let rdf_type = vocab::rdf_type();
        let typed = |class: &'static str| {
            !self.store
                .match_pattern(Some(id), Some(&rdf_type), Some(&Term::Iri(Iri::from_static(class))), Some(&meta))
                .is_empty()
        };
        if typed(vocab::SU_COMPOUND_UNIT)
            || !self.store.match_pattern(Some(id), Some(&vocab::su_has_associated_unit()), None, Some(&meta)).is_empty()
        {
            Some(UnitKind::Compound)
        } else if typed(vocab::SU_STATEMENT_UNIT) || (self.store.has_graph(id) && self.store.has_graph(&meta)) {
            Some(UnitKind::Statement)
        } else {
            None
        }
    }

    pub fn contains_unit(&self, id: &Iri) -> bool {
        self.unit_kind(id).is_some()
    }

    /// Every unit id in the store, sorted.
    pub fn unit_ids(&self) -> Vec<Iri> {
        let mut ids: BTreeSet<Iri> = BTreeSet::new();
        for g in self.store.graph_names() {
            if let Some(base) = g.as_str().strip_suffix("#meta") {
                if let Ok(id) = Iri::new(base) {
                    if self.contains_unit(&id) {
                        ids.insert(id);
                    }
                }
            }
        }
        ids.into_iter().collect()
    }

    /// Units whose meta graph types them with `class`.
    pub fn units_of_class(&self, class: &Iri) -> Vec<Iri> {
        let object = Term::Iri(class.clone());
        let mut ids: BTreeSet<Iri> = BTreeSet::new();
        for q in self.store.match_pattern(None, Some(&vocab::rdf_type()), Some(&object), None) {
            if q.graph == meta_graph(&q.subject) && self.contains_unit(&q.subject) {
                ids.insert(q.subject);
            }
        }
        ids.into_iter().collect()
    }

    fn classes_of(&self, id: &Iri) -> Vec<Iri> {
        let mut classes: Vec<Iri> = self
            .store
            .objects(id, &vocab::rdf_type(), Some(&meta_graph(id)))
            .into_iter()
            .filter_map(|t| t.as_iri().cloned())
            .filter(|c| !is_marker_class(c))
            .collect();
        classes.sort();
        classes
    }

    /// Mints a statement unit from graph-less content.
    pub fn mint_statement_unit(
        &mut self,
        content: &[Triple],
        unit_classes: &[Iri],
        meta_pairs: &[(Iri, Term)],
    ) -> Result<StatementUnit, UnitError> {
        if content.is_empty() {
            return Err(UnitError::EmptyContent);
        }
        if unit_classes.is_empty() {
            return Err(UnitError::NoUnitClass);
        }
        for class in unit_classes {
            if !self.is_known_unit_class(class) {
                return Err(UnitError::UnknownUnitClass(class.clone()));
            }
        }
        let placeholder = Iri::from_static("urn:su:content");
        let canonical: Vec<Quad> = content.iter().cloned().map(|t| t.in_graph(placeholder.clone())).collect();
        let id = self.minter.mint(write_nquads(&canonical).as_bytes());
        let meta = meta_graph(&id);

        for triple in content {
            self.store.insert(triple.clone().in_graph(id.clone()));
        }
        self.store.insert(Quad::new(id.clone(), vocab::rdf_type(), vocab::su_statement_unit(), meta.clone()));
        for class in unit_classes {
            self.store.insert(Quad::new(id.clone(), vocab::rdf_type(), class.clone(), meta.clone()));
        }
        if !meta_pairs.iter().any(|(p, _)| p.as_str() == vocab::SU_LOGICAL_FRAMEWORK) {
            self.store.insert(Quad::new(
                id.clone(),
                vocab::su_logical_framework(),
                vocab::su_description_logics(),
                meta.clone(),
            ));
        }
        for (p, o) in meta_pairs {
            self.store.insert(Quad::new(id.clone(), p.clone(), o.clone(), meta.clone()));
        }
        self.statement_unit(&id)
    }

    /// Mints a compound unit. Member order is kept through index annotations.
    pub fn mint_compound_unit(&mut self, members: &[Iri], unit_classes: &[Iri]) -> Result<CompoundUnit, UnitError> {
        self.mint_compound_unit_with_meta(members, unit_classes, &[])
    }

    pub fn mint_compound_unit_with_meta(
        &mut self,
        members: &[Iri],
        unit_classes: &[Iri],
        meta_pairs: &[(Iri, Term)],
    ) -> Result<CompoundUnit, UnitError> {
        let canonical = compound_canonical(members, unit_classes, meta_pairs)?;
        self.check_compound(members, unit_classes)?;
        let id = self.minter.mint(canonical.as_bytes());
        self.write_compound(&id, members, unit_classes, meta_pairs);
        self.compound_unit(&id)
    }

    /// Stores a compound unit under an identifier computed by the caller.
    pub fn insert_compound_unit_with_id(
        &mut self,
        id: &Iri,
        members: &[Iri],
        unit_classes: &[Iri],
        meta_pairs: &[(Iri, Term)],
    ) -> Result<CompoundUnit, UnitError> {
        if members.is_empty() {
            return Err(UnitError::EmptyMembers);
        }
        self.check_compound(members, unit_classes)?;
        self.write_compound(id, members, unit_classes, meta_pairs);
        self.compound_unit(id)
    }

    fn check_compound(&self, members: &[Iri], unit_classes: &[Iri]) -> Result<(), UnitError> {
        for class in unit_classes {
            if !self.is_known_unit_class(class) {
                return Err(UnitError::UnknownUnitClass(class.clone()));
            }
        }
        for m in members {
            if !self.contains_unit(m) {
                return Err(UnitError::DanglingMember(m.clone()));
            }
        }
        Ok(())
    }

    fn write_compound(&mut self, id: &Iri, members: &[Iri], unit_classes: &[Iri], meta_pairs: &[(Iri, Term)]) {
        let meta = meta_graph(id);
        self.store.insert(Quad::new(id.clone(), vocab::rdf_type(), vocab::su_compound_unit(), meta.clone()));
        for class in unit_classes {
            self.store.insert(Quad::new(id.clone(), vocab::rdf_type(), class.clone(), meta.clone()));
        }
        let mut seen = BTreeSet::new();
        let distinct: Vec<&Iri> = members.iter().filter(|m| seen.insert(*m)).collect();
        for (index, m) in distinct.into_iter().enumerate() {
            self.store.insert(Quad::new(id.clone(), vocab::su_has_associated_unit(), m.clone(), meta.clone()));
            self.store.insert(Quad::new(
                m.clone(),
                vocab::su_member_index(),
                Literal::typed(alloc::format!("{index}"), vocab::xsd_integer()),
                meta.clone(),
            ));
        }
        for (p, o) in meta_pairs {
            self.store.insert(Quad::new(id.clone(), p.clone(), o.clone(), meta.clone()));
        }
    }

    /// Writes an already-built statement unit verbatim (used by importers).
    pub fn insert_statement_unit(&mut self, unit: &StatementUnit) {
        let meta = meta_graph(&unit.id);
        self.store.extend(unit.content.iter().map(|q| q.regraph(&unit.id)));
        self.store.extend(unit.meta.iter().map(|q| q.regraph(&meta)));
        self.store.insert(Quad::new(unit.id.clone(), vocab::rdf_type(), vocab::su_statement_unit(), meta.clone()));
        for class in &unit.unit_classes {
            self.store.insert(Quad::new(unit.id.clone(), vocab::rdf_type(), class.clone(), meta.clone()));
        }
    }

    /// Writes an already-built compound unit verbatim (used by importers).
    pub fn insert_compound_unit(&mut self, unit: &CompoundUnit) {
        let meta = meta_graph(&unit.id);
        self.store.extend(unit.meta.iter().map(|q| q.regraph(&meta)));
        self.write_compound(&unit.id, &unit.members, &unit.unit_classes, &[]);
    }

    pub fn statement_unit(&self, id: &Iri) -> Result<StatementUnit, UnitError> {
        match self.unit_kind(id) {
            Some(UnitKind::Statement) => {}
            Some(UnitKind::Compound) => return Err(UnitError::NotAStatementUnit(id.clone())),
            None => return Err(UnitError::UnknownUnit(id.clone())),
        }
        let content = self.store.graph(id).cloned().collect();
        let meta = self.store.graph(&meta_graph(id)).cloned().collect();
        Ok(StatementUnit { id: id.clone(), content, meta, unit_classes: self.classes_of(id) })
    }

    pub fn compound_unit(&self, id: &Iri) -> Result<CompoundUnit, UnitError> {
        match self.unit_kind(id) {
            Some(UnitKind::Compound) => {}
            Some(UnitKind::Statement) => return Err(UnitError::NotACompoundUnit(id.clone())),
            None => return Err(UnitError::UnknownUnit(id.clone())),
        }
        let meta_iri = meta_graph(id);
        let meta: BTreeSet<Quad> = self.store.graph(&meta_iri).cloned().collect();
        let mut members: Vec<(u64, Iri)> = meta
            .iter()
            .filter(|q| &q.subject == id && q.predicate.as_str() == vocab::SU_HAS_ASSOCIATED_UNIT)
            .filter_map(|q| q.object.as_iri().cloned())
            .map(|m| {
                let index = member_index(&meta, &m).unwrap_or(u64::MAX);
                (index, m)
            })
            .collect();
        members.sort();
        Ok(CompoundUnit {
            id: id.clone(),
            members: members.into_iter().map(|(_, m)| m).collect(),
            unit_classes: self.classes_of(id),
            meta,
        })
    }

    pub fn unit(&self, id: &Iri) -> Result<SemanticUnit, UnitError> {
        match self.unit_kind(id) {
            Some(UnitKind::Statement) => self.statement_unit(id).map(SemanticUnit::Statement),
            Some(UnitKind::Compound) => self.compound_unit(id).map(SemanticUnit::Compound),
            None => Err(UnitError::UnknownUnit(id.clone())),
        }
    }

    /// Content of a statement unit, or the union of the members' assembled
    /// contents for a compound unit.
    pub fn assemble_content(&self, id: &Iri) -> Result<BTreeSet<Quad>, UnitError> {
        let mut out = BTreeSet::new();
        let mut on_path = Vec::new();
        let mut done = BTreeSet::new();
        self.assemble_into(id, &mut out, &mut on_path, &mut done)?;
        Ok(out)
    }

    fn assemble_into(
        &self,
        id: &Iri,
        out: &mut BTreeSet<Quad>,
        on_path: &mut Vec<Iri>,
        done: &mut BTreeSet<Iri>,
    ) -> Result<(), UnitError> {
        if on_path.contains(id) {
            return Err(UnitError::CyclicComposition(id.clone()));
        }
        if done.contains(id) {
            return Ok(());
        }
        match self.unit(id)? {
            SemanticUnit::Statement(u) => out.extend(u.content),
            SemanticUnit::Compound(c) => {
                on_path.push(id.clone());
                for m in &c.members {
                    self.assemble_into(m, out, on_path, done)?;
                }
                on_path.pop();
            }
        }
        done.insert(id.clone());
        Ok(())
    }

    /// Adds a quad to a unit's meta graph. Idempotent.
    pub fn add_meta(&mut self, unit_id: &Iri, predicate: Iri, value: impl Into<Term>) -> Result<(), UnitError> {
        if !self.contains_unit(unit_id) {
            return Err(UnitError::UnknownUnit(unit_id.clone()));
        }
        self.store.insert(Quad::new(unit_id.clone(), predicate, value, meta_graph(unit_id)));
        Ok(())
    }

    /// Types the unit with an additional (domain) class and optionally links
    /// the representation to its referent.
    pub fn set_dual_type(&mut self, unit_id: &Iri, extra_class: Iri, represents: Option<Iri>) -> Result<(), UnitError> {
        self.add_meta(unit_id, vocab::rdf_type(), extra_class)?;
        if let Some(referent) = represents {
            self.add_meta(unit_id, vocab::iao_is_about(), referent)?;
        }
        Ok(())
    }

    pub fn annotate_method(&mut self, unit_id: &Iri, method: Iri) -> Result<(), UnitError> {
        self.add_meta(unit_id, vocab::su_measured_applying_method(), method)
    }

    /// Best human-readable label for a resource: an `rdfs:label` (English or
    /// untagged preferred) or else the IRI's local name.
    pub fn label_of(&self, iri: &Iri) -> String {
        label::label_of(&self.store, iri)
    }
}

fn member_index(meta: &BTreeSet<Quad>, member: &Iri) -> Option<u64> {
    meta.iter()
        .filter(|q| &q.subject == member && q.predicate.as_str() == vocab::SU_MEMBER_INDEX)
        .find_map(|q| q.object.as_literal().and_then(|l| l.lexical().parse().ok()))
}

fn compound_canonical(members: &[Iri], unit_classes: &[Iri], meta_pairs: &[(Iri, Term)]) -> Result<String, UnitError> {
    if members.is_empty() {
        return Err(UnitError::EmptyMembers);
    }
    let mut canonical = String::from("compound\n");
    let classes: BTreeSet<&Iri> = unit_classes.iter().collect();
    for c in classes {
        canonical.push_str("class ");
        canonical.push_str(c.as_str());
        canonical.push('\n');
    }
    for m in members {
        canonical.push_str("member ");
        canonical.push_str(m.as_str());
        canonical.push('\n');
    }
    let pairs: BTreeMap<String, ()> = meta_pairs
        .iter()
        .map(|(p, o)| {
            let mut s = String::new();
            s.push_str(p.as_str());
            s.push(' ');
            crate::nquads::write_term(&mut s, o);
            (s, ())
        })
        .collect();
    for (p, _) in pairs {
        canonical.push_str("meta ");
        canonical.push_str(&p);
        canonical.push('\n');
    }
    Ok(canonical)
}

//! A knowledge graph persisted as one N-Quads file, plus the shapes and
//! label templates that live next to it.

use std::fs;
use std::path::{Path, PathBuf};

use semgrid_core::id::{ContentHashMinter, IdMinter};
use semgrid_core::nquads::{parse_nquads, write_nquads};
use semgrid_core::units::{LabelTemplate, Shape};
use semgrid_core::{Iri, KnowledgeGraph, QuadStore};

use crate::error::ApiError;
use crate::formats::{ShapeSpec, TemplateSpec};

pub const DEFAULT_STORE: &str = "semgrid.nq";
pub const DEFAULT_SHAPES_DIR: &str = "shapes";
pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkspaceConfig {
    pub store_path: PathBuf,
    pub shapes_dir: PathBuf,
    pub deterministic_ids: bool,
    pub max_adjustment_size: usize,
    pub listen_addr: String,
}

impl Default for WorkspaceConfig {
    fn default() -> Self {
        Self {
            store_path: DEFAULT_STORE.into(),
            shapes_dir: DEFAULT_SHAPES_DIR.into(),
            deterministic_ids: false,
            max_adjustment_size: semgrid_core::inference::DEFAULT_MAX_ADJUSTMENT_SIZE,
            listen_addr: DEFAULT_LISTEN.into(),
        }
    }
}

/// Random `urn:su:{uuid}` identifiers.
#[derive(Debug, Clone, Copy, Default)]
pub struct UuidMinter;

impl IdMinter for UuidMinter {
    fn mint(&mut self, _canonical: &[u8]) -> Iri {
        Iri::new(format!("urn:su:{}", uuid::Uuid::new_v4())).expect("uuid urn is a valid IRI")
    }
}

pub struct Workspace {
    pub config: WorkspaceConfig,
    pub kg: KnowledgeGraph,
    pub shapes: Vec<Shape>,
    pub templates: Vec<LabelTemplate>,
}

impl std::fmt::Debug for Workspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workspace").field("config", &self.config).field("kg", &self.kg).finish()
    }
}

fn read(path: &Path) -> Result<String, ApiError> {
    fs::read_to_string(path)
        .map_err(|e| ApiError::usage(format!("cannot read {}: {e}", path.display())).with_code("IO_ERROR"))
}

impl Workspace {
    /// Loads the store file when it exists; a missing file is an empty store.
    pub fn open(config: WorkspaceConfig) -> Result<Self, ApiError> {
        let mut store = QuadStore::new();
        if config.store_path.exists() {
            let text = read(&config.store_path)?;
            let quads = parse_nquads(&text)
                .map_err(|e| ApiError::domain("STORE_LOAD_ERROR", format!("{}: {e}", config.store_path.display())))?;
            for q in quads {
                store.insert(q);
            }
        }
        let minter: Box<dyn IdMinter + Send + Sync> =
            if config.deterministic_ids { Box::new(ContentHashMinter) } else { Box::new(UuidMinter) };
        let (shapes, templates) = load_shapes(&config.shapes_dir)?;
        Ok(Self { kg: KnowledgeGraph::new(store, minter), config, shapes, templates })
    }

    /// Writes the store through a temporary file and a rename.
    pub fn save(&self) -> Result<(), ApiError> {
        let path = &self.config.store_path;
        let tmp = path.with_extension("nq.tmp");
        let text = write_nquads(self.kg.store().iter());
        let io = |e: std::io::Error| ApiError::domain("IO_ERROR", format!("cannot write {}: {e}", path.display()));
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    /// `xsd:dateTime` for provenance, or nothing in deterministic mode.
    pub fn timestamp(&self) -> Option<String> {
        if self.config.deterministic_ids {
            None
        } else {
            Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
        }
    }
}

/// `*.shape.json` and `*.template.json` under `dir`, in file-name order.
pub fn load_shapes(dir: &Path) -> Result<(Vec<Shape>, Vec<LabelTemplate>), ApiError> {
    let mut shapes = Vec::new();
    let mut templates = Vec::new();
    if !dir.is_dir() {
        return Ok((shapes, templates));
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| ApiError::usage(format!("cannot list {}: {e}", dir.display())).with_code("IO_ERROR"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    files.sort();
    for f in files {
        let name = f.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        if name.ends_with(".shape.json") {
            shapes.push(load_shape(&f)?);
        } else if name.ends_with(".template.json") {
            let spec: TemplateSpec = serde_json::from_str(&read(&f)?)?;
            templates.push(spec.compile()?);
        }
    }
    Ok((shapes, templates))
}

pub fn load_shape(path: &Path) -> Result<Shape, ApiError> {
    let spec: ShapeSpec = serde_json::from_str(&read(path)?)?;
    spec.compile()
}

pub fn read_file(path: &Path) -> Result<String, ApiError> {
    read(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_and_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let config = WorkspaceConfig {
            store_path: dir.path().join("ws/store.nq"),
            shapes_dir: dir.path().join("missing"),
            deterministic_ids: true,
            ..WorkspaceConfig::default()
        };
        let mut ws = Workspace::open(config.clone()).unwrap();
        assert!(ws.kg.store().is_empty());
        let quads = parse_nquads("<urn:a> <urn:p> \"x\" <urn:g> .\n").unwrap();
        ws.kg.store_mut().insert(quads[0].clone());
        ws.save().unwrap();
        let again = Workspace::open(config).unwrap();
        assert_eq!(again.kg.store().len(), 1);
        assert!(again.timestamp().is_none());
    }

    #[test]
    fn uuid_ids_differ() {
        let mut m = UuidMinter;
        let a = m.mint(b"same");
        let b = m.mint(b"same");
        assert_ne!(a, b);
        assert!(a.as_str().starts_with("urn:su:"));
    }
}

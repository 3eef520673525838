//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use semgrid_core::Iri;
use serde_json::Value;

use crate::api::{self, render};
use crate::error::ApiError;
use crate::formats::{BundleIndex, ScmSpec};
use crate::workspace::{load_shape, read_file, Workspace, WorkspaceConfig, DEFAULT_LISTEN, DEFAULT_SHAPES_DIR, DEFAULT_STORE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "semgrid", version, about = "Semantic units, causal maps and causal queries")]
pub struct Cli {
    /// N-Quads file holding the knowledge graph.
    #[arg(long, global = true, env = "SEMGRID_STORE", default_value = DEFAULT_STORE)]
    pub store: PathBuf,
    /// Directory of `*.shape.json` and `*.template.json` files.
    #[arg(long, global = true, env = "SEMGRID_SHAPES", default_value = DEFAULT_SHAPES_DIR)]
    pub shapes: PathBuf,
    /// Content-addressed identifiers and no timestamps.
    #[arg(long, global = true, env = "SEMGRID_DETERMINISTIC")]
    pub deterministic: bool,
    #[arg(long, global = true, default_value_t = semgrid_core::inference::DEFAULT_MAX_ADJUSTMENT_SIZE)]
    pub max_adjustment_size: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Backdoor,
    Frontdoor,
    Identified,
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    /// Builds and stores a map over every universal causal statement.
    Build,
    List,
    Show {
        #[arg(long)]
        map: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Adds an N-Quads file to the store.
    Ingest {
        file: PathBuf,
        #[arg(long)]
        build_map: bool,
    },
    /// Checks statement units against shapes.
    Validate {
        unit: Option<String>,
        #[arg(long)]
        all: bool,
        /// Shape file, or the id of a shape in the shapes directory.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Composes two causal statements, or mints a compound unit, from a JSON file.
    Compose {
        #[arg(long)]
        from: PathBuf,
    },
    #[command(subcommand)]
    Map(MapCommand),
    Junctions {
        #[arg(long)]
        map: String,
        #[arg(long)]
        persist: bool,
    },
    Perspective {
        #[arg(long)]
        map: String,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        /// JSON list of `{"predicate": ..., "value": ...}` requirements.
        #[arg(long)]
        context: Option<PathBuf>,
        #[arg(long)]
        persist: bool,
    },
    Dsep {
        #[arg(long)]
        map: String,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    Identify {
        #[arg(long)]
        map: String,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        #[arg(long, value_delimiter = ',')]
        latent: Vec<String>,
    },
    Estimate {
        #[arg(value_enum)]
        method: Method,
        #[arg(long)]
        scm: PathBuf,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        #[arg(long, value_delimiter = ',')]
        adjust: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        mediators: Option<Vec<String>>,
    },
    Mediate {
        #[arg(long)]
        scm: PathBuf,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        mediator: String,
        #[arg(long)]
        effect: String,
        #[arg(long)]
        baseline: Option<String>,
        #[arg(long)]
        treated: Option<String>,
    },
    /// Counterfactual query: observe, intervene, predict.
    Whatif {
        #[arg(long)]
        scm: PathBuf,
        /// `A=a,B=b`
        #[arg(long, default_value = "")]
        observe: String,
        #[arg(long = "do", default_value = "")]
        intervention: String,
        #[arg(long)]
        query: String,
        /// Store the answer as a potential-outcome unit linking these units.
        #[arg(long, requires_all = ["record_universal", "method"])]
        record_observed: Option<String>,
        #[arg(long, requires = "record_observed")]
        record_universal: Option<String>,
        #[arg(long, requires = "record_observed")]
        method: Option<String>,
    },
    ExportNanopub {
        unit: String,
        #[arg(long)]
        doi_prefix: Option<String>,
        /// Writes the bundle here and its index to `<out>.index.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shows a unit.
    Unit { id: String },
    /// Renders a unit's dynamic label.
    Label { id: String },
    Serve {
        #[arg(long, env = "SEMGRID_LISTEN", default_value = DEFAULT_LISTEN)]
        listen: String,
    },
}

impl Cli {
    pub fn config(&self) -> WorkspaceConfig {
        WorkspaceConfig {
            store_path: self.store.clone(),
            shapes_dir: self.shapes.clone(),
            deterministic_ids: self.deterministic,
            max_adjustment_size: self.max_adjustment_size,
            listen_addr: match &self.command {
                Command::Serve { listen } => listen.clone(),
                _ => DEFAULT_LISTEN.into(),
            },
        }
    }
}

fn parse_assignment(text: &str) -> Result<BTreeMap<String, String>, ApiError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| ApiError::usage(format!("expected NAME=VALUE, got {part}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, ApiError> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

fn read_scm(path: &std::path::Path) -> Result<ScmSpec, ApiError> {
    read_json(path)
}

/// What a command produced and whether the store must be saved.
struct Outcome {
    value: Value,
    dirty: bool,
}

fn pure(value: Value) -> Outcome {
    Outcome { value, dirty: false }
}

fn dirty(value: Value) -> Outcome {
    Outcome { value, dirty: true }
}

fn execute(ws: &mut Workspace, command: &Command) -> Result<Outcome, ApiError> {
    Ok(match command {
        Command::Ingest { file, build_map } => {
            let req = api::IngestRequest { nquads: read_file(file)?, build_map: *build_map };
            dirty(api::ingest(ws, &req)?)
        }
        Command::Validate { unit, all, shape } => {
            let mut req = api::ValidateRequest { unit: unit.clone(), all: *all, shape: None };
            let file = shape.as_ref().map(PathBuf::from).filter(|p| p.is_file());
            let extra = file.as_ref().map(|p| load_shape(p)).transpose()?;
            if extra.is_none() {
                req.shape = shape.clone();
            }
            pure(api::validate(ws, &req, extra.as_ref())?)
        }
        Command::Compose { from } => dirty(api::compose(ws, &read_json(from)?)?),
        Command::Map(MapCommand::Build) => dirty(api::build_map(ws)?),
        Command::Map(MapCommand::List) => pure(api::list_maps(ws)),
        Command::Map(MapCommand::Show { map }) => pure(api::get_map(ws, map)?),
        Command::Junctions { map, persist: false } => pure(api::junctions(ws, map)?),
        Command::Junctions { map, persist: true } => dirty(api::persist_junctions(ws, map)?),
        Command::Perspective { map, cause, effect, context, persist } => {
            let context = match context {
                Some(p) => read_json(p)?,
                None => Vec::new(),
            };
            let req = api::PerspectiveRequest { cause: cause.clone(), effect: effect.clone(), context, persist: *persist };
            if *persist {
                dirty(api::persist_perspective_request(ws, map, &req)?)
            } else {
                pure(api::perspective(ws, map, &req)?)
            }
        }
        Command::Dsep { map, x, y, given } => {
            let req = api::DsepRequest { map: map.clone(), x: x.clone(), y: y.clone(), given: given.clone() };
            pure(api::dsep(ws, &req)?)
        }
        Command::Identify { map, cause, effect, latent } => {
            let req = api::IdentifyRequest {
                map: map.clone(),
                cause: cause.clone(),
                effect: effect.clone(),
                latent: latent.clone(),
            };
            pure(api::identify(ws, &req)?)
        }
        Command::Estimate { method, scm, cause, effect, adjust, mediators } => {
            let method = match method {
                Method::Backdoor => "backdoor",
                Method::Frontdoor => "frontdoor",
                Method::Identified => "identified",
            };
            let req = api::EstimateRequest {
                scm: read_scm(scm)?,
                method: method.into(),
                cause: cause.clone(),
                effect: effect.clone(),
                adjust: adjust.clone(),
                mediators: mediators.clone(),
            };
            pure(api::estimate(ws, &req)?)
        }
        Command::Mediate { scm, cause, mediator, effect, baseline, treated } => {
            let req = api::MediateRequest {
                scm: read_scm(scm)?,
                cause: cause.clone(),
                mediator: mediator.clone(),
                effect: effect.clone(),
                baseline: baseline.clone(),
                treated: treated.clone(),
            };
            pure(api::mediate(&req)?)
        }
        Command::Whatif { scm, observe, intervention, query, record_observed, record_universal, method } => {
            let record = match (record_observed, record_universal, method) {
                (Some(o), Some(u), Some(m)) => {
                    Some(api::RecordRequest { observed_unit: o.clone(), universal_unit: u.clone(), method: m.clone() })
                }
                _ => None,
            };
            let req = api::WhatifRequest {
                scm: read_scm(scm)?,
                observe: parse_assignment(observe)?,
                intervention: parse_assignment(intervention)?,
                query: query.clone(),
                record,
            };
            if req.record.is_some() {
                dirty(api::whatif_record(ws, &req)?)
            } else {
                pure(api::whatif(&req)?)
            }
        }
        Command::ExportNanopub { unit, doi_prefix, out } => {
            let value = api::nanopub(ws, unit, doi_prefix.as_deref())?;
            match out {
                None => pure(value),
                Some(path) => {
                    let index = BundleIndex {
                        unit: value["unit"].as_str().unwrap_or_default().to_string(),
                        nanopubs: serde_json::from_value(value["nanopubs"].clone())?,
                    };
                    let io = |e: std::io::Error| ApiError::domain("IO_ERROR", e.to_string());
                    std::fs::write(path, value["nquads"].as_str().unwrap_or_default()).map_err(io)?;
                    let index_path = PathBuf::from(format!("{}.index.json", path.display()));
                    std::fs::write(&index_path, render(&serde_json::to_value(&index)?)).map_err(io)?;
                    pure(serde_json::to_value(&index)?)
                }
            }
        }
        Command::Unit { id } => pure(api::unit(ws, id)?),
        Command::Label { id } => pure(api::unit_label(ws, id)?),
        Command::Serve { .. } => unreachable!("serve is dispatched before execute"),
    })
}

fn text(ws: &Workspace, command: &Command, value: &Value) -> Option<String> {
    let s = |v: &Value| v.as_str().unwrap_or_default().to_string();
    match command {
        Command::Label { .. } => Some(s(&value["label"])),
        Command::Unit { id } => {
            let (label, _) = api::unit_label_text(ws, &Iri::new(id).ok()?).ok()?;
            Some(format!("{id}\n{label}"))
        }
        Command::Junctions { .. } => Some(
            value["junctions"]
                .as_array()?
                .iter()
                .map(|j| s(&j["text"]))
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        Command::Identify { .. } => Some(match value["estimand"].as_str() {
            Some(e) => format!("P({}|do({})) = {e}", s(&value["effect"]), s(&value["cause"])),
            None => format!("P({}|do({})) is not identified", s(&value["effect"]), s(&value["cause"])),
        }),
        Command::Dsep { .. } => {
            Some(if value["d_separated"].as_bool()? { "d-separated" } else { "d-connected" }.to_string())
        }
        Command::Validate { .. } => Some(
            value["reports"]
                .as_array()?
                .iter()
                .map(|r| {
                    let label = Iri::new(s(&r["unit"]))
                        .ok()
                        .and_then(|id| api::unit_label_text(ws, &id).ok())
                        .map(|(l, _)| l)
                        .unwrap_or_default();
                    let n = r["violations"].as_array().map_or(0, Vec::len);
                    let verdict = if n == 0 { "conforms".to_string() } else { format!("{n} violation(s)") };
                    format!("{label} [{}]: {verdict}", s(&r["shape"]))
                })
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        _ => None,
    }
}

fn fail(err: &mut dyn Write, e: &ApiError) -> i32 {
    let _ = err.write_all(render(&e.to_json()).as_bytes());
    e.exit_code()
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let config = cli.config();
    let mut ws = match Workspace::open(config) {
        Ok(ws) => ws,
        Err(e) => return fail(err, &e),
    };
    if let Command::Serve { .. } = cli.command {
        return match crate::server::serve_blocking(ws) {
            Ok(()) => 0,
            Err(e) => fail(err, &e),
        };
    }
    let outcome = match execute(&mut ws, &cli.command) {
        Ok(o) => o,
        Err(e) => return fail(err, &e),
    };
    if outcome.dirty {
        if let Err(e) = ws.save() {
            return fail(err, &e);
        }
    }
    let body = match cli.format {
        Format::Text => match text(&ws, &cli.command, &outcome.value) {
            Some(t) => format!("{t}\n"),
            None => render(&outcome.value),
        },
        Format::Json => render(&outcome.value),
    };
    let _ = out.write_all(body.as_bytes());
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignments() {
        let a = parse_assignment("X=1, Y = 0").unwrap();
        assert_eq!(a.get("Y").map(String::as_str), Some("0"));
        assert!(parse_assignment("").unwrap().is_empty());
        assert!(parse_assignment("X").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["semgrid", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["semgrid", "dsep", "--map", "urn:m"], &mut out, &mut err), 2);
        out.clear();
        assert_eq!(run(["semgrid", "--help"], &mut out, &mut err), 0);
        assert!(!out.is_empty());
    }
}

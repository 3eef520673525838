//! Semantic units over a quad store, statement logic, causal maps, causal
//! identification and a discrete structural causal model engine.
//!
//! `no_std` with `alloc`. File IO, the CLI and the HTTP server live in the
//! `semgrid` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod causal;
pub mod fdo;
pub mod id;
pub mod inference;
pub mod logic;
pub mod nquads;
pub mod scm;
pub mod store;
pub mod term;
pub mod units;
pub mod vocab;

pub use store::QuadStore;
pub use term::{Iri, Literal, Quad, Term, Triple};
pub use units::KnowledgeGraph;

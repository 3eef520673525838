//! Slow, obvious reference implementations. Nothing here shares code with
//! `semgrid-core`; graphs are index lists and models are dense tables.

pub mod graph;
pub mod model;

pub use graph::Graph;
pub use model::Bn;

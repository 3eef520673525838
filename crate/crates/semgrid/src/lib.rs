//! File formats, workspace persistence, the command line and the HTTP
//! service around `semgrid-core`.

pub mod api;
pub mod cli;
pub mod error;
pub mod formats;
pub mod server;
pub mod workspace;

pub use error::{ApiError, ErrorKind};
pub use workspace::{Workspace, WorkspaceConfig};

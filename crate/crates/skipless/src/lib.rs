//! IO companion to `skipless-core`: JSON/CSV file formats, the
//! versioned table assets, and helpers shared by the CLI.

pub mod data;
pub mod formats;
pub mod io;

pub use skipless_core as core;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unknown construction tag {0:?}")]
    UnknownConstruction(String),
    #[error("unknown group tag {0:?}")]
    UnknownGroup(String),
    #[error("malformed point encoding {0:?}")]
    BadPoint(String),
    #[error("descriptor inconsistent: {0}")]
    Inconsistent(&'static str),
    #[error("field error: {0}")]
    Field(#[from] skipless_core::gf::GfError),
    #[error("code error: {0}")]
    Zigzag(#[from] skipless_core::zigzag::ZigzagError),
    #[error("design error: {0}")]
    Design(#[from] skipless_core::design::DesignError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

//! File formats, snapshots, statistics and oracle checks behind the `topk`
//! command-line tool.

pub mod error;
pub mod formats;
pub mod query;
pub mod snapshot;
pub mod stats;
pub mod verify;

pub use error::{CliError, Result};
pub use snapshot::{Engine, Kind, Params, Payload, Snapshot};

use topk_core::BuildOptions;

/// Build options honoring `TOPK_DEBUG_ORACLE=1`.
pub fn build_options_from_env() -> BuildOptions {
    BuildOptions {
        verify_lists: std::env::var("TOPK_DEBUG_ORACLE").is_ok_and(|v| v == "1"),
    }
}

/// Reads an input file for `kind`.
pub fn read_input(path: &std::path::Path, kind: Kind) -> Result<Payload> {
    let bytes = std::fs::read(path)?;
    if kind == Kind::Docindex {
        return Ok(Payload::Corpus(formats::parse_corpus(&bytes)?));
    }
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Parse("input is not text".into()))?;
    Ok(Payload::Array(formats::parse_color_array(text)?))
}

use topk_core::QuerySpec;

use crate::error::{CliError, Result};
use crate::snapshot::{Engine, Snapshot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// 1-based inclusive range.
    Range { a: usize, b: usize, k: usize },
    Pattern { pattern: Vec<u8>, k: usize, t: Option<usize> },
}

/// Answers `q`, returning `(id, priority)` pairs highest first.
pub fn run(snap: &Snapshot, engine: &Engine, q: &Query) -> Result<Vec<(u32, u64)>> {
    match (engine, q) {
        (Engine::Range(ix), Query::Range { a, b, k }) => Ok(ix.topk(QuerySpec::new(*a, *b, *k))?.pairs()),
        (Engine::Docs(ix), Query::Pattern { pattern, k, t }) => {
            if *k == 0 {
                return Err(topk_core::Error::BadParameter("k must be at least 1").into());
            }
            match t {
                None | Some(1) => Ok(ix.ranked_list(pattern, *k)),
                Some(t) => Ok(ix.t_mine(pattern, *t, *k)?),
            }
        }
        (_, Query::Range { .. }) => Err(CliError::KindMismatch {
            found: snap.kind.name(),
            query: "range",
        }),
        (_, Query::Pattern { .. }) => Err(CliError::KindMismatch {
            found: snap.kind.name(),
            query: "pattern",
        }),
    }
}

/// One `(id,priority)` line per result.
pub fn format_results(results: &[(u32, u64)]) -> String {
    results.iter().map(|(c, p)| format!("({c},{p})\n")).collect()
}

//! Plain-text input formats.
//!
//! Color arrays: a line `N sigma`, a line of `N` color ids, a line of
//! `sigma` priorities. Corpora: a header line `s rank_1 ... rank_s`
//! followed by one document per line.

use std::fmt::Write as _;
use std::str::FromStr;

use topk_core::docs::DocumentCollection;
use topk_core::ColorArray;

use crate::error::{CliError, Result};

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn numbers<T: FromStr>(line: &str, what: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|w| w.parse().map_err(|_| parse_err(format!("bad {what} value {w:?}"))))
        .collect()
}

pub fn parse_color_array(text: &str) -> Result<ColorArray> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<usize> = numbers(lines.next().ok_or_else(|| parse_err("empty input"))?, "header")?;
    let [n, sigma] = header[..] else {
        return Err(parse_err("header must be `N sigma`"));
    };
    let colors: Vec<u32> = numbers(lines.next().unwrap_or(""), "color")?;
    let priorities: Vec<u64> = numbers(lines.next().unwrap_or(""), "priority")?;
    if n == 0 {
        return Err(parse_err("array is empty"));
    }
    if colors.len() != n {
        return Err(parse_err(format!("expected {n} colors, found {}", colors.len())));
    }
    if priorities.len() != sigma {
        return Err(parse_err(format!("expected {sigma} priorities, found {}", priorities.len())));
    }
    if lines.next().is_some() {
        return Err(parse_err("trailing data after priorities"));
    }
    Ok(ColorArray::from_priorities(colors, priorities)?)
}

pub fn format_color_array(arr: &ColorArray) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", arr.len(), arr.sigma());
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "{}", join(&mut arr.colors().iter().map(|c| c.to_string())));
    let _ = writeln!(s, "{}", join(&mut arr.priorities().iter().map(|p| p.to_string())));
    s
}

pub fn parse_corpus(bytes: &[u8]) -> Result<DocumentCollection> {
    let mut lines = bytes.split(|&b| b == b'\n');
    let header = lines.next().filter(|l| !l.is_empty()).ok_or_else(|| parse_err("empty input"))?;
    let header = std::str::from_utf8(header).map_err(|_| parse_err("header is not text"))?;
    let mut fields = header.split_whitespace();
    let s: usize = fields
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| parse_err("header must start with the document count"))?;
    let ranks: Vec<u64> = numbers(&fields.collect::<Vec<_>>().join(" "), "rank")?;
    if s == 0 {
        return Err(parse_err("corpus has no documents"));
    }
    if ranks.len() != s {
        return Err(parse_err(format!("expected {s} ranks, found {}", ranks.len())));
    }
    let mut docs: Vec<Vec<u8>> = lines.map(|l| l.strip_suffix(b"\r").unwrap_or(l).to_vec()).collect();
    // one trailing newline is allowed
    if docs.len() == s + 1 && docs[s].is_empty() {
        docs.pop();
    }
    if docs.len() != s {
        return Err(parse_err(format!("expected {s} documents, found {}", docs.len())));
    }
    Ok(DocumentCollection::new(docs, ranks)?)
}

pub fn format_corpus(coll: &DocumentCollection) -> Vec<u8> {
    let mut out = coll.len().to_string().into_bytes();
    for r in coll.ranks() {
        out.extend_from_slice(format!(" {r}").as_bytes());
    }
    for d in coll.docs() {
        out.push(b'\n');
        out.extend_from_slice(d);
    }
    out.push(b'\n');
    out
}

//! Pattern-dependent document scores, computed by scanning.
//!
//! These produce scored arrays and ranges for [`super::RangeHeapMerger`]:
//! one range per pattern holding the documents that score for it.

use alloc::vec::Vec;

use super::{count_occurrences, DocumentCollection};

/// How a document is scored against a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Number of occurrences.
    Freq,
    /// Closeness of the two nearest occurrences: the text length minus
    /// their distance. Documents with fewer than two occurrences do not score.
    MinDist,
}

pub fn freq(doc: &[u8], p: &[u8]) -> u64 {
    count_occurrences(doc, p) as u64
}

/// Smallest distance between the starts of two occurrences of `p`.
pub fn mindist(doc: &[u8], p: &[u8]) -> Option<u64> {
    if p.is_empty() || p.len() > doc.len() {
        return None;
    }
    let starts: Vec<usize> = doc
        .windows(p.len())
        .enumerate()
        .filter(|(_, w)| *w == p)
        .map(|(i, _)| i)
        .collect();
    starts.windows(2).map(|w| (w[1] - w[0]) as u64).min()
}

fn score(coll: &DocumentCollection, metric: Metric, doc: &[u8], p: &[u8]) -> Option<u64> {
    match metric {
        Metric::Freq => Some(freq(doc, p)).filter(|&f| f > 0),
        Metric::MinDist => mindist(doc, p).map(|d| coll.total_len() as u64 - d),
    }
}

/// Scored array with one 1-based range per pattern that any document
/// scores for; a document appears at most once per range.
pub fn scored_ranges(coll: &DocumentCollection, patterns: &[&[u8]], metric: Metric) -> (Vec<(u32, u64)>, Vec<(usize, usize)>) {
    let mut entries = Vec::new();
    let mut ranges = Vec::new();
    for p in patterns {
        let start = entries.len();
        for (i, d) in coll.docs().iter().enumerate() {
            if let Some(s) = score(coll, metric, d, p) {
                entries.push((i as u32 + 1, s));
            }
        }
        if entries.len() > start {
            ranges.push((start + 1, entries.len()));
        }
    }
    (entries, ranges)
}

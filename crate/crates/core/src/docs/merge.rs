//! Highest values across disjoint ranges of a scored array.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;

use crate::index::TopKIndex;
use crate::model::{ColorArray, QuerySpec};
use crate::online::ColorStream;
use crate::optimal::OptimalTopK;
use crate::{Error, Result};

/// Reports the `K` highest-scored entries found in a set of disjoint ranges
/// of an array of `(document, score)` entries.
///
/// Every position acts as its own color with its score as priority, so equal
/// scores are ordered by position, later positions first.
#[derive(Clone, Debug)]
pub struct RangeHeapMerger {
    docs: Vec<u32>,
    index: OptimalTopK,
}

impl RangeHeapMerger {
    pub fn new(entries: &[(u32, u64)]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyArray);
        }
        let colors = (0..entries.len() as u32).collect();
        let scores = entries.iter().map(|e| e.1).collect();
        let arr = ColorArray::from_priorities(colors, scores)?;
        Ok(Self {
            docs: entries.iter().map(|e| e.0).collect(),
            index: OptimalTopK::new(&arr),
        })
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Top `k` entries over the 1-based inclusive `ranges`, highest first.
    pub fn topk(&self, ranges: &[(usize, usize)], k: usize) -> Result<Vec<(u32, u64)>> {
        for &(a, b) in ranges {
            QuerySpec::new(a, b, k).validate(self.len())?;
        }
        let mut sorted = ranges.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[1].0 <= w[0].1) {
            return Err(Error::OverlappingRanges);
        }

        let mut streams: Vec<ColorStream<'_, OptimalTopK>> = Vec::with_capacity(ranges.len());
        let mut seeds: Vec<(u32, usize)> = Vec::with_capacity(ranges.len());
        for (j, &(a, b)) in ranges.iter().enumerate() {
            let mut s = ColorStream::open(&self.index, a, b)?;
            if let Some(r) = s.next_rank() {
                seeds.push((r, j));
            }
            streams.push(s);
        }
        if seeds.len() > k {
            seeds.select_nth_unstable_by(k - 1, |x, y| y.cmp(x));
            seeds.truncate(k);
        }
        let mut heap = BinaryHeap::from(seeds);
        let palette = self.index.palette();
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let Some((r, j)) = heap.pop() else { break };
            let e = palette.entry(r);
            out.push((self.docs[e.color as usize], e.priority));
            if let Some(next) = streams[j].next_rank() {
                heap.push((next, j));
            }
        }
        Ok(out)
    }
}

/// Reference answer: flatten the ranges, sort by score and position, and
/// truncate.
pub fn oracle_merge(entries: &[(u32, u64)], ranges: &[(usize, usize)], k: usize) -> Vec<(u32, u64)> {
    let mut all: Vec<(u64, usize)> = ranges
        .iter()
        .flat_map(|&(a, b)| (a - 1..b).map(|i| (entries[i].1, i)))
        .collect();
    all.sort_unstable_by(|x, y| y.cmp(x));
    all.into_iter().take(k).map(|(s, i)| (entries[i].0, s)).collect()
}

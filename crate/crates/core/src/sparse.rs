//! Wavelet tree that keeps auxiliary structures only on a few levels.
//!
//! With `s = max(1, floor(min(log N, H) / f))` for tree height `H`, the
//! important depths are `i * s` for `i < f` plus the leaf depth `H`. Each important depth stores its level array
//! with a reporter and a counter, and for every element the position it came
//! from in the previous important level. Those source positions are
//! increasing inside each node, so mapping a parent interval to a descendant
//! is two binary searches.
//!
//! A query at an important node scans its important descendants from the
//! highest-priority one down, reporting whole descendants while their color
//! counts fit in `K` and descending into the first one that does not.

use alloc::vec::Vec;

use crate::index::{SpaceUsage, TopKIndex};
use crate::model::{ColorArray, Palette};
use crate::packed::{bits_for, PackedVec};
use crate::primitives::ColorRangeIndex;
use crate::sort::sort_desc;
use crate::{Error, Result};

/// Sorted 1-based positions, inside a parent node array, of the elements
/// that belong to one descendant node.
#[derive(Clone, Debug)]
pub struct DescendantPositions {
    parent_len: usize,
    positions: Vec<u32>,
}

impl DescendantPositions {
    pub fn new(parent: &[u32], in_child: impl Fn(u32) -> bool) -> Self {
        let positions = parent
            .iter()
            .enumerate()
            .filter(|&(_, &c)| in_child(c))
            .map(|(i, _)| i as u32 + 1)
            .collect();
        Self {
            parent_len: parent.len(),
            positions,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Maps the parent interval `[a, b]` to the 1-based descendant interval
    /// holding exactly its elements, or `None` if there are none.
    pub fn descend(&self, a: usize, b: usize) -> Result<Option<(usize, usize)>> {
        if a == 0 || b > self.parent_len {
            return Err(Error::OutOfBounds {
                index: if a == 0 { 0 } else { b },
                len: self.parent_len,
            });
        }
        let lo = self.positions.partition_point(|&p| (p as usize) < a);
        let end = self.positions.partition_point(|&p| (p as usize) <= b);
        Ok((lo < end).then_some((lo + 1, end)))
    }
}

#[derive(Clone, Debug, Default)]
struct SparseLevel {
    depth: u32,
    /// `2^depth + 1` segment boundaries, one segment per node.
    node_starts: PackedVec,
    /// Reporter and counter; absent at the leaf level.
    index: Option<ColorRangeIndex>,
    /// Position of each element in the previous important level.
    src_pos: PackedVec,
}

impl SparseLevel {
    #[inline]
    fn segment(&self, node: usize) -> (usize, usize) {
        (self.node_starts.get(node) as usize, self.node_starts.get(node + 1) as usize)
    }

    /// Elements of segment `[s, e)` whose source lies in `[lo, hi]`.
    fn descend(&self, s: usize, e: usize, lo: usize, hi: usize) -> (usize, usize) {
        let (lo, hi) = (lo as u64, hi as u64);
        let first = partition(s, e, |i| self.src_pos.get(i) < lo);
        let end = partition(first, e, |i| self.src_pos.get(i) <= hi);
        (first, end)
    }

    fn space_bits(&self) -> u64 {
        self.node_starts.space_bits() + self.src_pos.space_bits() + self.index.as_ref().map_or(0, |x| x.space_bits())
    }
}

/// First index in `[s, e)` where `pred` turns false.
#[inline]
fn partition(mut s: usize, mut e: usize, pred: impl Fn(usize) -> bool) -> usize {
    while s < e {
        let mid = s + (e - s) / 2;
        if pred(mid) {
            s = mid + 1;
        } else {
            e = mid;
        }
    }
    s
}

/// The sparse structure over plain ranks in `[0, sigma)`; larger is better.
#[derive(Clone, Debug, Default)]
pub(crate) struct SparseCore {
    len: usize,
    sigma: usize,
    offset: u32,
    levels: Vec<SparseLevel>,
}

impl SparseCore {
    pub(crate) fn new(ranks: &[u32], sigma: usize, f: usize) -> Self {
        let len = ranks.len();
        let padded = sigma.max(1).next_power_of_two();
        let height = padded.trailing_zeros();
        let offset = (padded - sigma.max(1)) as u32;
        let depths = important_depths(len, height, f);

        let mut cur: Vec<u32> = ranks.iter().map(|&r| r + offset).collect();
        let mut pos: Vec<u32> = (0..len as u32).collect();
        let pos_width = bits_for(len.saturating_sub(1) as u64);
        let mut levels = Vec::with_capacity(depths.len());
        for (j, &depth) in depths.iter().enumerate() {
            if j > 0 {
                // stable grouping by node; `pos` tracks where each element was
                let shift = height - depth;
                let mut order: Vec<u32> = (0..len as u32).collect();
                order.sort_by_key(|&i| cur[i as usize] >> shift);
                let next: Vec<u32> = order.iter().map(|&i| cur[i as usize]).collect();
                pos = order;
                cur = next;
            }
            let shift = height - depth;
            let nodes = 1usize << depth;
            let mut starts = Vec::with_capacity(nodes + 1);
            let mut i = 0;
            for node in 0..nodes {
                starts.push(i as u64);
                while i < len && (cur[i] >> shift) as usize == node {
                    i += 1;
                }
            }
            starts.push(len as u64);
            let node_starts = PackedVec::with_width(starts.into_iter(), nodes + 1, bits_for(len as u64));
            let src_pos = if j == 0 {
                PackedVec::default()
            } else {
                PackedVec::with_width(pos.iter().map(|&p| p as u64), len, pos_width)
            };
            let index = (depth < height).then(|| ColorRangeIndex::new(&cur));
            levels.push(SparseLevel {
                depth,
                node_starts,
                index,
                src_pos,
            });
        }
        Self {
            len,
            sigma,
            offset,
            levels,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    fn is_leaf(&self, j: usize) -> bool {
        j + 1 == self.levels.len()
    }

    fn count(&self, j: usize, lo: usize, hi: usize) -> usize {
        match &self.levels[j].index {
            Some(ix) => ix.count(lo, hi),
            None => 1,
        }
    }

    fn report(&self, j: usize, node: usize, lo: usize, hi: usize, out: &mut Vec<u32>) {
        match &self.levels[j].index {
            Some(ix) => {
                let start = out.len();
                ix.report_into(lo, hi, out);
                for r in &mut out[start..] {
                    *r -= self.offset;
                }
            }
            None => out.push(node as u32 - self.offset),
        }
    }

    /// Reports at most `cap` distinct ranks of `[lo, hi]` in arbitrary
    /// order; returns whether more exist.
    pub(crate) fn report_capped(&self, lo: usize, hi: usize, cap: usize, out: &mut Vec<u32>) -> bool {
        match &self.levels[0].index {
            Some(ix) => {
                let start = out.len();
                let more = ix.report_capped_into(lo, hi, cap, out);
                for r in &mut out[start..] {
                    *r -= self.offset;
                }
                more
            }
            None => {
                out.push(0);
                false
            }
        }
    }

    /// Appends the top `k` ranks of `[lo, hi]` to `out`, unsorted. Returns
    /// the number of descendant nodes examined.
    pub(crate) fn query_unsorted(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) -> usize {
        let mut touched = 1;
        let (mut j, mut node, mut lo, mut hi, mut k) = (0usize, 0usize, lo, hi, k);
        let mut m = self.count(0, lo, hi);
        'outer: loop {
            if m <= k {
                self.report(j, node, lo, hi, out);
                return touched;
            }
            let next = j + 1;
            let gap = self.levels[next].depth - self.levels[j].depth;
            let level = &self.levels[next];
            let first = node << gap;
            for child in (first..first + (1usize << gap)).rev() {
                let (s, e) = level.segment(child);
                if s == e {
                    continue;
                }
                touched += 1;
                let (clo, cend) = level.descend(s, e, lo, hi);
                if clo == cend {
                    continue;
                }
                let mc = if self.is_leaf(next) { 1 } else { self.count(next, clo, cend - 1) };
                if mc < k {
                    self.report(next, child, clo, cend - 1, out);
                    k -= mc;
                } else {
                    j = next;
                    node = child;
                    lo = clo;
                    hi = cend - 1;
                    m = mc;
                    continue 'outer;
                }
            }
            // every descendant fit, which contradicts m > k
            unreachable!("descendant counts exceed the node count");
        }
    }

    /// Top `k` ranks of `[lo, hi]`, highest first.
    pub(crate) fn query_sorted(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        out.clear();
        self.query_unsorted(lo, hi, k, out);
        sort_desc(out, self.sigma);
    }

    pub(crate) fn depths(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.depth).collect()
    }

    pub(crate) fn stored_elements(&self) -> usize {
        self.levels.len() * self.len
    }

    pub(crate) fn space_bits(&self) -> u64 {
        self.levels.iter().map(SparseLevel::space_bits).sum()
    }
}

/// `{i * s : i < f, i * s < height} ∪ {height}` with
/// `s = max(1, floor(min(log2(len), height) / f))`. Capping by the height
/// keeps the fan-out at `sigma^(1/f)` when the alphabet is small.
fn important_depths(len: usize, height: u32, f: usize) -> Vec<u32> {
    let log = if len > 1 { len.ilog2().min(height) } else { 0 };
    let stride = (log / f as u32).max(1);
    let mut depths: Vec<u32> = (0..f as u32).map(|i| i * stride).take_while(|&d| d < height).collect();
    depths.push(height);
    depths
}

/// Top-K index answering queries in `O(N^{1/f} + K)` time.
#[derive(Clone, Debug)]
pub struct SparseTopK {
    f: usize,
    core: SparseCore,
    palette: Palette,
}

impl SparseTopK {
    pub fn new(arr: &ColorArray, f: usize) -> Result<Self> {
        if f < 2 {
            return Err(Error::BadParameter("f must be at least 2"));
        }
        let core = SparseCore::new(arr.ranks(), arr.sigma(), f);
        debug_assert!(core.stored_elements() <= (f + 1) * arr.len());
        Ok(Self {
            f,
            core,
            palette: arr.palette().clone(),
        })
    }

    pub fn f(&self) -> usize {
        self.f
    }

    /// Depths of the important levels, root first, leaves last.
    pub fn important_depths(&self) -> Vec<u32> {
        self.core.depths()
    }

    /// Total number of elements stored across the important level arrays.
    pub fn stored_elements(&self) -> usize {
        self.core.stored_elements()
    }

    /// Like [`TopKIndex::topk_ranks`], returning the number of important
    /// nodes examined.
    pub fn topk_ranks_counted(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) -> usize {
        out.clear();
        let touched = self.core.query_unsorted(lo, hi, k, out);
        sort_desc(out, self.core.sigma);
        touched
    }
}

impl TopKIndex for SparseTopK {
    fn len(&self) -> usize {
        self.core.len()
    }

    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn topk_ranks(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        self.core.query_sorted(lo, hi, k, out);
    }
}

impl SpaceUsage for SparseTopK {
    fn space_bits(&self) -> u64 {
        self.core.space_bits() + self.palette.space_bits()
    }
}

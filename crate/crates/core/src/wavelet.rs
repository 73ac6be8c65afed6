//! Wavelet tree over priority ranks with per-level reporting and counting.
//!
//! The alphabet of ranks is padded to a power of two `P` by adding unused
//! symbols below every real rank, so a node's right child always holds the
//! higher-priority half of its colors. All nodes of one depth are stored as
//! one array in which every node occupies a contiguous segment. Reporting and
//! counting structures are built once per depth over that array; since a
//! color lives in exactly one node per depth, a query restricted to a node
//! segment sees the same predecessor relation as a per-node structure would.

use alloc::vec::Vec;

use crate::bits::RankSelectBits;
use crate::index::{SpaceUsage, TopKIndex};
use crate::model::{ColorArray, Palette};
use crate::primitives::ColorRangeIndex;
use crate::{Error, Result};

/// Which child of a wavelet-tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Child {
    /// Lower-priority half, bit 0.
    Left,
    /// Higher-priority half, bit 1.
    Right,
}

/// Maps the 1-based node interval `[a, b]` to the corresponding interval of
/// `child`, or `None` when no element of `[a, b]` goes there.
pub fn map_interval(bits: &RankSelectBits, a: usize, b: usize, child: Child) -> Result<Option<(usize, usize)>> {
    if a == 0 || b > bits.len() {
        return Err(Error::OutOfBounds {
            index: if a == 0 { 0 } else { b },
            len: bits.len(),
        });
    }
    if a > b {
        return Ok(None);
    }
    let (lo, hi) = match child {
        Child::Right => (bits.rank1(a - 1) + 1, bits.rank1(b)),
        Child::Left => (bits.rank0(a - 1) + 1, bits.rank0(b)),
    };
    Ok((lo <= hi).then_some((lo, hi)))
}

/// A node visited by a traced query; bounds are 0-based positions in the
/// level array, `count` is the number of distinct colors found there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeVisit {
    pub level: usize,
    pub lo: usize,
    pub hi: usize,
    pub count: usize,
}

#[derive(Clone, Debug)]
struct Level {
    /// Routing bits, absent at the leaf level.
    bits: Option<RankSelectBits>,
    index: ColorRangeIndex,
}

/// Top-K index answering queries in `O(log^2 N + K)` time.
#[derive(Clone, Debug)]
pub struct WaveletTopK {
    len: usize,
    height: usize,
    /// Number of padding symbols below the real ranks.
    offset: u32,
    levels: Vec<Level>,
    palette: Palette,
}

impl WaveletTopK {
    pub fn new(arr: &ColorArray) -> Self {
        let sigma = arr.sigma();
        let padded = sigma.next_power_of_two();
        let height = padded.trailing_zeros() as usize;
        let offset = (padded - sigma) as u32;
        let mut cur: Vec<u32> = arr.ranks().iter().map(|&r| r + offset).collect();
        let mut levels = Vec::with_capacity(height + 1);
        for depth in 0..=height {
            if depth == height {
                levels.push(Level {
                    bits: None,
                    index: ColorRangeIndex::new(&cur),
                });
                break;
            }
            let shift = height - 1 - depth;
            let bits = RankSelectBits::from_bools(cur.iter().map(|&s| (s >> shift) & 1 == 1));
            levels.push(Level {
                bits: Some(bits),
                index: ColorRangeIndex::new(&cur),
            });
            // stable by the first depth+1 bits keeps every child contiguous
            cur.sort_by_key(|&s| s >> shift);
        }
        Self {
            len: arr.len(),
            height,
            offset,
            levels,
            palette: arr.palette().clone(),
        }
    }

    /// Depth of the leaves; the tree has `height + 1` levels.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Routing bits of all nodes of `level`, concatenated in node order.
    /// The root's bits are `level_bits(0)`.
    pub fn level_bits(&self, level: usize) -> Option<&RankSelectBits> {
        self.levels.get(level).and_then(|l| l.bits.as_ref())
    }

    /// Symbol at 0-based `pos` of the level array (rank plus padding).
    pub fn level_symbol(&self, level: usize, pos: usize) -> u32 {
        self.levels[level].index.symbol(pos)
    }

    /// Runs a query and records every node whose colors were counted.
    pub fn topk_traced(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>, trace: &mut Vec<NodeVisit>) {
        self.query(lo, hi, k, out, Some(trace));
    }

    fn report(&self, level: usize, lo: usize, hi: usize, out: &mut Vec<u32>) {
        let start = out.len();
        self.levels[level].index.report_into(lo, hi, out);
        for r in &mut out[start..] {
            *r -= self.offset;
        }
    }

    fn count(&self, level: usize, lo: usize, hi: usize, trace: &mut Option<&mut Vec<NodeVisit>>) -> usize {
        let count = self.levels[level].index.count(lo, hi);
        if let Some(t) = trace {
            t.push(NodeVisit { level, lo, hi, count });
        }
        count
    }

    fn query(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>, mut trace: Option<&mut Vec<NodeVisit>>) {
        out.clear();
        let (mut level, mut start, mut len) = (0usize, 0usize, self.len);
        let (mut lo, mut hi, mut k) = (lo, hi, k);
        // an interval never holds more colors than positions or than its
        // node has symbols; counting is skipped when that bound settles it
        let bound = |level: usize, n: usize| n.min(1 << (self.height - level));
        let mut known = None;
        loop {
            if bound(level, hi + 1 - lo) <= k || known.unwrap_or_else(|| self.count(level, lo, hi, &mut trace)) <= k {
                self.report(level, lo, hi, out);
                break;
            }
            // more than k >= 1 colors, so this node is not a leaf
            let bits = self.levels[level].bits.as_ref().unwrap();
            let z0 = bits.rank0(start);
            let zeros = bits.rank0(start + len) - z0;
            let o0 = start - z0;
            let right_lo = start + zeros + bits.rank1(lo) - o0;
            let right_end = start + zeros + bits.rank1(hi + 1) - o0;
            let right_n = right_end - right_lo;
            if right_n > 0 {
                if bound(level + 1, right_n) >= k {
                    let right_m = self.count(level + 1, right_lo, right_end - 1, &mut trace);
                    if right_m >= k {
                        level += 1;
                        start += zeros;
                        len -= zeros;
                        lo = right_lo;
                        hi = right_end - 1;
                        known = Some(right_m);
                        continue;
                    }
                }
                let before = out.len();
                self.report(level + 1, right_lo, right_end - 1, out);
                k -= out.len() - before;
            }
            let left_lo = start + bits.rank0(lo) - z0;
            let left_hi = start + bits.rank0(hi + 1) - z0 - 1;
            level += 1;
            len = zeros;
            lo = left_lo;
            hi = left_hi;
            known = None;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
    }
}

impl TopKIndex for WaveletTopK {
    fn len(&self) -> usize {
        self.len
    }

    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn topk_ranks(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        self.query(lo, hi, k, out, None);
    }
}

impl SpaceUsage for WaveletTopK {
    fn space_bits(&self) -> u64 {
        let levels: u64 = self
            .levels
            .iter()
            .map(|l| l.index.space_bits() + l.bits.as_ref().map_or(0, |b| b.space_bits()))
            .sum();
        levels + self.palette.space_bits()
    }
}

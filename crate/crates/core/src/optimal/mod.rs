//! Top-K queries in `O(K)` time.
//!
//! The whole array gets a sparse structure with `f = 2`, which is already
//! optimal once `K` exceeds `sqrt(N)`. Smaller `K` are handled on levels
//! `l = 1..=h` with thresholds `t_l = floor(N^(1/2^l))`: level `l` cuts the
//! array into blocks of `t_l * delta` elements, stores top-`ceil(N^(1/2^l))`
//! lists for power-of-two intervals ending or starting at block boundaries,
//! and a sparse structure over each block with colors remapped to their
//! rank inside the block. The last level additionally keeps packed-word
//! structures for very small `K`.
//!
//! A query first probes whether `[a, b]` has more than `K` colors. If not,
//! it reports them all. Otherwise it picks the deepest level whose threshold
//! still covers `K`, answers the middle part from two precomputed lists and
//! both flanks from their blocks, and merges the three sorted lists.

mod chunked;
mod fblock;

use alloc::vec;
use alloc::vec::Vec;

use crate::index::{SpaceUsage, TopKIndex};
use crate::model::{ColorArray, ColorEntry, ColorList, Palette};
use crate::packed::{bits_for, PackedVec};
use crate::primitives::WaveletMatrix;
use crate::sort::{sort_desc, union3_desc, union_desc_into};
use crate::sparse::SparseCore;
use crate::{Error, Result};

pub use chunked::ChunkedTopK;
pub use fblock::SeqTable;

use fblock::{part_len_for, FBlock};

/// Construction switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Replays every precomputed list against a brute-force scan.
    pub verify_lists: bool,
}

/// Top `k` distinct entries of two priority-descending lists.
pub fn two_list_union(x: &ColorList, y: &ColorList, k: usize) -> ColorList {
    let (a, b) = (&x.entries, &y.entries);
    let (mut i, mut j) = (0, 0);
    let mut entries: Vec<ColorEntry> = Vec::with_capacity(k.min(a.len() + b.len()));
    while entries.len() < k {
        let next = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) => match p.order_key().cmp(&q.order_key()) {
                core::cmp::Ordering::Greater => {
                    i += 1;
                    *p
                }
                core::cmp::Ordering::Less => {
                    j += 1;
                    *q
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    *p
                }
            },
            (Some(p), None) => {
                i += 1;
                *p
            }
            (None, Some(q)) => {
                j += 1;
                *q
            }
            (None, None) => break,
        };
        entries.push(next);
    }
    ColorList { entries }
}

/// Concatenated variable-length lists.
#[derive(Clone, Debug, Default)]
pub(crate) struct ListPool {
    offsets: Vec<u32>,
    data: Vec<u32>,
}

impl ListPool {
    pub(crate) fn push(&mut self, list: &[u32]) {
        if self.offsets.is_empty() {
            self.offsets.push(0);
        }
        self.data.extend_from_slice(list);
        self.offsets.push(self.data.len() as u32);
    }

    pub(crate) fn count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    #[inline]
    pub(crate) fn get(&self, id: usize) -> &[u32] {
        &self.data[self.offsets[id] as usize..self.offsets[id + 1] as usize]
    }

    pub(crate) fn space_bits(&self) -> u64 {
        (self.offsets.len() + self.data.len()) as u64 * 32
    }
}

/// One block of a level: a sparse structure over block-local priority
/// ranks and the map back to positions.
#[derive(Clone, Debug, Default)]
struct Block {
    sparse: SparseCore,
    /// Offset of the first occurrence of each block rank.
    first: PackedVec,
    small: Option<FBlock>,
}

#[derive(Clone, Debug, Default)]
struct GridLevel {
    stride: usize,
    cap: usize,
    min_radius: u32,
    radii: u32,
    /// Forward and backward lists per grid point and radius.
    lists: ListPool,
    blocks: Vec<Block>,
}

impl GridLevel {
    #[inline]
    fn list_id(&self, point: usize, radius: u32, backward: bool) -> usize {
        ((point * self.radii as usize + (radius - self.min_radius) as usize) << 1) | backward as usize
    }
}

/// Structure parameters derived from `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Params {
    /// `thr[l] = floor(N^(1/2^l))` for `l = 0..=h`.
    pub thr: Vec<usize>,
    /// `cap[l] = ceil(N^(1/2^l))`.
    pub cap: Vec<usize>,
    pub h: usize,
    pub delta: usize,
    pub kcap: usize,
    pub g: usize,
}

impl Params {
    pub(crate) fn new(n: usize) -> Self {
        let mut thr = vec![n];
        let mut cap = vec![n];
        let mut l = 0;
        loop {
            l += 1;
            let t = thr[l - 1].isqrt();
            thr.push(t);
            cap.push(if exact_root(t, l, n) { t } else { t + 1 });
            if t <= 2 {
                break;
            }
        }
        let h = l;
        let log = ceil_log2(n);
        let delta_max = (n / (4 * thr[1].max(1))).max(1);
        let delta = (log * log).clamp(1, delta_max);
        let kcap = icbrt_ceil(log).max(1);
        let g = log.isqrt().max(1);
        Self {
            thr,
            cap,
            h,
            delta,
            kcap,
            g,
        }
    }

    pub(crate) fn stride(&self, l: usize) -> usize {
        self.thr[l].max(1) * self.delta
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Whether `t^(2^l) == n`.
fn exact_root(t: usize, l: usize, n: usize) -> bool {
    let mut p = t as u128;
    for _ in 0..l {
        p = p.saturating_mul(p);
        if p > n as u128 {
            return false;
        }
    }
    p == n as u128
}

fn icbrt_ceil(x: usize) -> usize {
    let mut r = 0;
    while r * r * r < x {
        r += 1;
    }
    r
}

/// The optimal-time structure over plain ranks in `[0, sigma)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct OptimalCore {
    len: usize,
    sigma: usize,
    ranks: PackedVec,
    whole: SparseCore,
    thr: Vec<usize>,
    kcap: usize,
    /// Deepest level `l` with `thr[l] >= 2^c`, indexed by `c`.
    level_for_log: Vec<u8>,
    levels: Vec<GridLevel>,
    table: Option<SeqTable>,
}

impl OptimalCore {
    pub(crate) fn new(ranks: &[u32], sigma: usize, opts: &BuildOptions) -> Result<Self> {
        let n = ranks.len();
        let params = Params::new(n);
        let whole = SparseCore::new(ranks, sigma, 2);
        let rank_width = bits_for(sigma.saturating_sub(1) as u64);
        let wm = WaveletMatrix::new(ranks, rank_width);

        let mut level_for_log = Vec::new();
        for c in 0..usize::BITS as usize {
            let need = 1usize << c;
            if need > n.max(1) {
                break;
            }
            let l = (1..=params.h).rev().find(|&l| params.thr[l] >= need).unwrap_or(0);
            level_for_log.push(l as u8);
        }

        // the last level's packed words share one table
        let stride_h = params.stride(params.h);
        let color_width = bits_for(stride_h.min(n) as u64).max(1);
        let g = params.g.min(64 / color_width as usize - 1).max(1);
        let mut table = SeqTable::new(color_width, part_len_for(g + 1, color_width));

        let mut levels = Vec::with_capacity(params.h);
        for l in 1..=params.h {
            let stride = params.stride(l);
            let cap = params.cap[l];
            let lists = build_lists(&wm, ranks, stride, cap, opts)?;
            let last = l == params.h;
            let blocks = (0..n.div_ceil(stride))
                .map(|b| {
                    let slice = &ranks[b * stride..((b + 1) * stride).min(n)];
                    build_block(slice, last, g, params.kcap, &mut table)
                })
                .collect();
            levels.push(GridLevel {
                stride,
                cap,
                min_radius: lists.0,
                radii: lists.1,
                lists: lists.2,
                blocks,
            });
        }
        table.seal();
        Ok(Self {
            len: n,
            sigma,
            ranks: PackedVec::with_width(ranks.iter().map(|&r| r as u64), n, rank_width),
            whole,
            thr: params.thr,
            kcap: params.kcap,
            level_for_log,
            levels,
            table: Some(table),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Deepest level whose threshold is at least `k`, or 0 for the whole
    /// array structure.
    fn level_for(&self, k: usize) -> usize {
        let h = self.levels.len();
        if h == 0 || self.thr[1] < k {
            return 0;
        }
        let c = ceil_log2(k);
        let mut l = self.level_for_log.get(c).map_or(0, |&l| l as usize).max(1);
        while l < h && self.thr[l + 1] >= k {
            l += 1;
        }
        while l > 1 && self.thr[l] < k {
            l -= 1;
        }
        l
    }

    /// Replaces `out` with the top `k` ranks of `[lo, hi]`, highest first.
    pub(crate) fn query(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        out.clear();
        if !self.whole.report_capped(lo, hi, k, out) {
            sort_desc(out, self.sigma);
            return;
        }
        out.clear();
        let l = self.level_for(k);
        if l == 0 {
            self.whole.query_sorted(lo, hi, k, out);
            return;
        }
        let level = &self.levels[l - 1];
        let last = l == self.levels.len();
        let s = level.stride;
        let a1 = (lo / s + 1) * s - 1;
        if a1 >= hi {
            self.block_query(level, last, lo / s, lo, hi, k, out);
            return;
        }
        let b1 = (hi + 1) / s * s - 1;
        let mut left = Vec::with_capacity(k);
        self.block_query(level, last, lo / s, lo, a1, k, &mut left);
        let mut right = Vec::with_capacity(k);
        if b1 < hi {
            self.block_query(level, last, (b1 + 1) / s, b1 + 1, hi, k, &mut right);
        }
        let mut mid = Vec::with_capacity(k);
        if b1 > a1 {
            let (j1, j2) = (a1 + 1, b1 + 1);
            let x = (j2 - j1).ilog2();
            let fwd = level.lists.get(level.list_id(j1 / s, x, false));
            let bwd = level.lists.get(level.list_id(j2 / s, x, true));
            union_desc_into(fwd, bwd, k, &mut mid);
        }
        union3_desc(&left, &mid, &right, k, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn block_query(&self, level: &GridLevel, last: bool, b: usize, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        let start = b * level.stride;
        let block = &level.blocks[b];
        let (llo, lhi) = (lo - start, hi - start);
        match (&block.small, &self.table) {
            (Some(fb), Some(table)) if last && k < self.kcap => {
                fb.query(table, llo, lhi, k, out);
                for r in out.iter_mut() {
                    *r = self.ranks.get(start + block.first.get(*r as usize - 1) as usize) as u32;
                }
            }
            _ => {
                block.sparse.query_sorted(llo, lhi, k, out);
                for r in out.iter_mut() {
                    *r = self.ranks.get(start + block.first.get(*r as usize) as usize) as u32;
                }
            }
        }
    }

    pub(crate) fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn space_bits(&self) -> u64 {
        let levels: u64 = self
            .levels
            .iter()
            .map(|lv| {
                lv.lists.space_bits()
                    + lv
                        .blocks
                        .iter()
                        .map(|b| {
                            b.sparse.space_bits()
                                + b.first.space_bits()
                                + b.small.as_ref().map_or(0, FBlock::space_bits)
                        })
                        .sum::<u64>()
            })
            .sum();
        self.ranks.space_bits()
            + self.whole.space_bits()
            + levels
            + self.table.as_ref().map_or(0, SeqTable::space_bits)
            + (self.thr.len() + self.level_for_log.len()) as u64 * 64
    }
}

/// Lists for grid points `i * stride`: for radii `r` from `floor(log2
/// stride)` up, the top `cap` ranks of `[j, j + 2^r)` and `[j - 2^r, j)`
/// where they fit. Returns `(min_radius, radius count, lists)`.
fn build_lists(
    wm: &WaveletMatrix,
    ranks: &[u32],
    stride: usize,
    cap: usize,
    opts: &BuildOptions,
) -> Result<(u32, u32, ListPool)> {
    let n = ranks.len();
    let min_radius = stride.ilog2();
    let max_radius = n.max(1).ilog2().max(min_radius);
    let radii = max_radius - min_radius + 1;
    let mut pool = ListPool::default();
    let mut buf = Vec::with_capacity(cap);
    for point in 0..=n / stride {
        let j = point * stride;
        for r in min_radius..=max_radius {
            let w = 1usize << r;
            for (lo, hi) in [(j, j + w), (j.wrapping_sub(w), j)] {
                buf.clear();
                if j >= w || lo == j {
                    if hi <= n && lo < hi {
                        wm.top_distinct(lo, hi, cap, &mut buf);
                        if opts.verify_lists && buf != brute_top(&ranks[lo..hi], cap) {
                            return Err(Error::VerificationFailed("precomputed list differs from scan"));
                        }
                    }
                }
                pool.push(&buf);
            }
        }
    }
    Ok((min_radius, radii, pool))
}

fn brute_top(ranks: &[u32], k: usize) -> Vec<u32> {
    let mut v = ranks.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    v.truncate(k);
    v
}

fn build_block(slice: &[u32], last: bool, g: usize, kcap: usize, table: &mut SeqTable) -> Block {
    let mut distinct = slice.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let local: Vec<u32> = slice
        .iter()
        .map(|r| distinct.binary_search(r).unwrap() as u32)
        .collect();
    let mut first = vec![u32::MAX; distinct.len()];
    for (i, &p) in local.iter().enumerate() {
        if first[p as usize] == u32::MAX {
            first[p as usize] = i as u32;
        }
    }
    let sparse = SparseCore::new(&local, distinct.len(), if last { 6 } else { 2 });
    let small = last.then(|| {
        let one_based: Vec<u32> = local.iter().map(|&p| p + 1).collect();
        FBlock::new(&one_based, g, kcap, table)
    });
    Block {
        sparse,
        first: PackedVec::from_slice(&first),
        small,
    }
}

/// Top-K index answering sorted queries in `O(K)` time with `O(N log N)`
/// bits.
#[derive(Clone, Debug)]
pub struct OptimalTopK {
    core: OptimalCore,
    palette: Palette,
}

impl OptimalTopK {
    pub fn new(arr: &ColorArray) -> Self {
        Self::with_options(arr, &BuildOptions::default()).expect("unverified build cannot fail")
    }

    pub fn with_options(arr: &ColorArray, opts: &BuildOptions) -> Result<Self> {
        Ok(Self {
            core: OptimalCore::new(arr.ranks(), arr.sigma(), opts)?,
            palette: arr.palette().clone(),
        })
    }

    /// Number of grid levels `h`.
    pub fn levels(&self) -> usize {
        self.core.level_count()
    }

    /// Block length of each grid level, level 1 first.
    pub fn strides(&self) -> Vec<usize> {
        self.core.levels.iter().map(|l| l.stride).collect()
    }

    /// List capacity of each grid level, level 1 first.
    pub fn list_caps(&self) -> Vec<usize> {
        self.core.levels.iter().map(|l| l.cap).collect()
    }
}

impl TopKIndex for OptimalTopK {
    fn len(&self) -> usize {
        self.core.len()
    }

    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn topk_ranks(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        self.core.query(lo, hi, k, out);
    }
}

impl SpaceUsage for OptimalTopK {
    fn space_bits(&self) -> u64 {
        self.core.space_bits() + self.palette.space_bits()
    }
}

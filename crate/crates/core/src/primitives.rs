//! One-dimensional colored range reporting and counting.
//!
//! Both reduce to the predecessor array `pred[i]`: the 1-based position of
//! the previous occurrence of the color at `i`, or 0. A color occurs in
//! `[a, b]` exactly when some `i` in `[a, b]` with that color has
//! `pred[i] < a`, and that witness is unique.
//!
//! Reporting walks a range-minimum structure over `pred`: take the position
//! of the minimum, stop if it is not a witness, otherwise report it and
//! recurse on both sides. Every recursion step either reports a color or
//! closes an interval, so the cost is linear in the output. Counting is a
//! dominance count over the points `(i, pred[i])`, answered by a wavelet
//! matrix over `pred` in `O(log N)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{zero_words, RankSelectBits};
use crate::model::ColorArray;
use crate::packed::{bits_for, PackedVec};
use crate::{Error, QuerySpec, Result};

/// Wavelet matrix over fixed-width symbols.
///
/// Supports counting symbols below a threshold in a range and listing the
/// distinct symbols of a range in decreasing order.
#[derive(Clone, Debug, Default)]
pub struct WaveletMatrix {
    len: usize,
    width: u32,
    /// All levels concatenated, level `k` at `[k * len, (k + 1) * len)`.
    bits: RankSelectBits,
    zeros: Vec<u32>,
    level_ones: Vec<u64>,
}

impl WaveletMatrix {
    pub fn new(values: &[u32], width: u32) -> Self {
        let len = values.len();
        let mut words = zero_words(len * width as usize);
        let mut zeros = Vec::with_capacity(width as usize);
        let mut cur: Vec<u32> = values.to_vec();
        let mut next_zero = Vec::with_capacity(len);
        let mut next_one = Vec::with_capacity(len);
        for level in 0..width {
            let shift = width - 1 - level;
            next_zero.clear();
            next_one.clear();
            for (i, &v) in cur.iter().enumerate() {
                if (v >> shift) & 1 == 1 {
                    let p = level as usize * len + i;
                    words[p >> 6] |= 1u64 << (p & 63);
                    next_one.push(v);
                } else {
                    next_zero.push(v);
                }
            }
            zeros.push(next_zero.len() as u32);
            cur.clear();
            cur.extend_from_slice(&next_zero);
            cur.extend_from_slice(&next_one);
        }
        let bits = RankSelectBits::from_words(words, len * width as usize);
        let level_ones = (0..width as usize)
            .map(|k| bits.rank1(k * len) as u64)
            .collect();
        Self {
            len,
            width,
            bits,
            zeros,
            level_ones,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn rank0_at(&self, level: usize, i: usize) -> usize {
        let ones = self.bits.rank1(level * self.len + i) - self.level_ones[level] as usize;
        i - ones
    }

    /// Number of symbols `< x` in the half-open range `[l, r)`.
    pub fn count_less(&self, mut l: usize, mut r: usize, x: u64) -> usize {
        if l >= r {
            return 0;
        }
        if self.width < 64 && x >> self.width != 0 {
            return r - l;
        }
        let mut res = 0;
        for level in 0..self.width as usize {
            let bit = (x >> (self.width as usize - 1 - level)) & 1;
            let l0 = self.rank0_at(level, l);
            let r0 = self.rank0_at(level, r);
            if bit == 1 {
                res += r0 - l0;
                let z = self.zeros[level] as usize;
                l = z + (l - l0);
                r = z + (r - r0);
            } else {
                l = l0;
                r = r0;
            }
            if l >= r {
                break;
            }
        }
        res
    }

    /// Appends the `k` largest distinct symbols of `[l, r)` to `out`,
    /// largest first. Costs `O(k * width)` rank operations.
    pub fn top_distinct(&self, l: usize, r: usize, k: usize, out: &mut Vec<u32>) {
        if l >= r || k == 0 {
            return;
        }
        let mut found = 0;
        let mut stack: Vec<(u32, usize, usize, u32)> = vec![(0, l, r, 0)];
        while let Some((level, l, r, prefix)) = stack.pop() {
            if l >= r {
                continue;
            }
            if level == self.width {
                out.push(prefix);
                found += 1;
                if found == k {
                    return;
                }
                continue;
            }
            let lv = level as usize;
            let l0 = self.rank0_at(lv, l);
            let r0 = self.rank0_at(lv, r);
            let z = self.zeros[lv] as usize;
            stack.push((level + 1, l0, r0, prefix));
            let bit = 1u32 << (self.width - 1 - level);
            stack.push((level + 1, z + l - l0, z + r - r0, prefix | bit));
        }
    }

    pub fn space_bits(&self) -> u64 {
        self.bits.space_bits() + self.zeros.len() as u64 * 32 + self.level_ones.len() as u64 * 64
    }
}

const RMQ_BLOCK: usize = 16;

/// Range-minimum positions over a packed array.
///
/// Inside a block of 16, `masks[i]` marks the positions of the block that
/// are strictly smaller than everything after them up to `i` (the
/// increasing stack ending at `i`), so the minimum of `[l, i]` is the first
/// marked position at or after `l`. A sparse table over block minima covers
/// whole blocks.
#[derive(Clone, Debug, Default)]
struct BlockRmq {
    masks: Vec<u16>,
    /// Level `j` of the sparse table at `offsets[j]..offsets[j + 1]`, holding
    /// block numbers.
    table: PackedVec,
    offsets: Vec<u32>,
}

impl BlockRmq {
    fn new(values: &PackedVec) -> Self {
        let n = values.len();
        let nb = n.div_ceil(RMQ_BLOCK);
        let mut masks = vec![0u16; n];
        for b in 0..nb {
            let start = b * RMQ_BLOCK;
            let mut stack = 0u16;
            for i in start..(start + RMQ_BLOCK).min(n) {
                let v = values.get(i);
                while stack != 0 {
                    let top = 15 - stack.leading_zeros() as usize;
                    if values.get(start + top) < v {
                        break;
                    }
                    stack &= !(1 << top);
                }
                stack |= 1 << (i - start);
                masks[i] = stack;
            }
        }
        let block_min = |b: usize| {
            let last = ((b + 1) * RMQ_BLOCK).min(n) - 1;
            values.get(b * RMQ_BLOCK + masks[last].trailing_zeros() as usize)
        };
        let mut levels: Vec<Vec<u32>> = vec![(0..nb as u32).collect()];
        let mut span = 1;
        while span * 2 <= nb {
            let prev = levels.last().unwrap();
            let cur: Vec<u32> = (0..=nb - span * 2)
                .map(|i| {
                    let (x, y) = (prev[i], prev[i + span]);
                    if block_min(y as usize) < block_min(x as usize) {
                        y
                    } else {
                        x
                    }
                })
                .collect();
            levels.push(cur);
            span *= 2;
        }
        // level 0 is the identity and is not stored
        let mut offsets = vec![0u32];
        let mut flat = Vec::new();
        for l in &levels[1..] {
            flat.extend_from_slice(l);
            offsets.push(flat.len() as u32);
        }
        let width = bits_for(nb.saturating_sub(1) as u64);
        Self {
            masks,
            table: PackedVec::with_width(flat.iter().map(|&p| p as u64), flat.len(), width),
            offsets,
        }
    }

    /// Minimum of `[l, r]` within one block.
    #[inline]
    fn in_block(&self, l: usize, r: usize) -> usize {
        let rel = l % RMQ_BLOCK;
        l + (self.masks[r] >> rel).trailing_zeros() as usize
    }

    /// Position of the minimum of block `b`.
    #[inline]
    fn block_argmin(&self, b: usize) -> usize {
        let start = b * RMQ_BLOCK;
        let last = (start + RMQ_BLOCK).min(self.masks.len()) - 1;
        start + self.masks[last].trailing_zeros() as usize
    }

    /// Position of a minimum of `values[l..=r]`.
    #[inline]
    fn argmin(&self, values: &PackedVec, l: usize, r: usize) -> usize {
        let (bl, br) = (l / RMQ_BLOCK, r / RMQ_BLOCK);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = self.in_block(l, (bl + 1) * RMQ_BLOCK - 1);
        let mut bv = values.get(best);
        let mut consider = |p: usize| {
            let v = values.get(p);
            if v < bv {
                best = p;
                bv = v;
            }
        };
        if br > bl + 1 {
            let (fb, lb) = (bl + 1, br - 1);
            let j = (usize::BITS - 1 - (lb - fb + 1).leading_zeros()) as usize;
            if j == 0 {
                consider(self.block_argmin(fb));
            } else {
                let off = self.offsets[j - 1] as usize;
                consider(self.block_argmin(self.table.get(off + fb) as usize));
                consider(self.block_argmin(self.table.get(off + lb + 1 - (1 << j)) as usize));
            }
        }
        consider(self.in_block(br * RMQ_BLOCK, r));
        best
    }

    fn space_bits(&self) -> u64 {
        self.masks.len() as u64 * 16 + self.table.space_bits() + self.offsets.len() as u64 * 32
    }
}

/// Predecessor array with `pred[i] = previous position + 1` (0 if none),
/// in 0-based positions: position `i` is a witness for `[lo, hi]` iff
/// `pred[i] <= lo`.
fn predecessors(symbols: &[u32]) -> Vec<u32> {
    let max = symbols.iter().copied().max().unwrap_or(0) as usize;
    let mut last = vec![0u32; max + 1];
    symbols
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let p = last[c as usize];
            last[c as usize] = i as u32 + 1;
            p
        })
        .collect()
}

/// Intervals shorter than this are scanned instead of split; the scan is a
/// constant per interval, so reporting stays `O(1 + output)`.
const SCAN_LEN: usize = 48;

/// Witness-walk color reporter over the predecessor array.
#[derive(Clone, Debug, Default)]
pub struct ColorReporter {
    pred: PackedVec,
    rmq: BlockRmq,
}

impl ColorReporter {
    pub fn new(symbols: &[u32]) -> Self {
        Self::from_pred(&predecessors(symbols))
    }

    fn from_pred(pred: &[u32]) -> Self {
        let pred = PackedVec::from_slice(pred);
        let rmq = BlockRmq::new(&pred);
        Self { pred, rmq }
    }

    /// Pushes witness positions of `[lo, hi]` (0-based) into `out`, stopping
    /// after `cap`. Returns whether further witnesses exist.
    pub fn witnesses(&self, lo: usize, hi: usize, cap: usize, out: &mut Vec<usize>) -> bool {
        self.each_witness(lo, hi, cap, |p| out.push(p))
    }

    /// Calls `emit` on up to `cap` witnesses of `[lo, hi]`, in no particular
    /// order. Returns whether further witnesses exist.
    pub fn each_witness(&self, lo: usize, hi: usize, cap: usize, mut emit: impl FnMut(usize)) -> bool {
        let limit = lo as u64;
        let mut found = 0;
        let mut stack = IntervalStack::default();
        let (mut l, mut r) = (lo, hi);
        loop {
            if r - l < SCAN_LEN {
                let stopped = self.pred.scan(l, r, |i, p| {
                    if p <= limit {
                        if found == cap {
                            return false;
                        }
                        emit(i);
                        found += 1;
                    }
                    true
                });
                if stopped {
                    return true;
                }
            } else {
                let m = self.rmq.argmin(&self.pred, l, r);
                if self.pred.get(m) <= limit {
                    if found == cap {
                        return true;
                    }
                    emit(m);
                    found += 1;
                    if m > l {
                        stack.push((l, m - 1));
                    }
                    if m < r {
                        stack.push((m + 1, r));
                    }
                }
            }
            match stack.pop() {
                Some(next) => (l, r) = next,
                None => return false,
            }
        }
    }

    /// `pred` value of 0-based position `i`.
    pub fn pred(&self, i: usize) -> u64 {
        self.pred.get(i)
    }

    pub fn space_bits(&self) -> u64 {
        self.pred.space_bits() + self.rmq.space_bits()
    }
}

/// Interval stack kept inline until it outgrows 32 entries.
#[derive(Default)]
struct IntervalStack {
    inline: [(usize, usize); 32],
    len: usize,
    spill: Vec<(usize, usize)>,
}

impl IntervalStack {
    #[inline]
    fn push(&mut self, v: (usize, usize)) {
        if self.len < self.inline.len() {
            self.inline[self.len] = v;
            self.len += 1;
        } else {
            self.spill.push(v);
        }
    }

    #[inline]
    fn pop(&mut self) -> Option<(usize, usize)> {
        if let Some(v) = self.spill.pop() {
            return Some(v);
        }
        if self.len == 0 {
            return None;
        }
        self.len -= 1;
        Some(self.inline[self.len])
    }
}

/// Dominance counter over the points `(i, pred[i])`.
#[derive(Clone, Debug, Default)]
pub struct ColorCounter {
    wm: WaveletMatrix,
}

impl ColorCounter {
    pub fn new(symbols: &[u32]) -> Self {
        Self::from_pred(&predecessors(symbols))
    }

    fn from_pred(pred: &[u32]) -> Self {
        let width = bits_for(pred.len() as u64);
        Self {
            wm: WaveletMatrix::new(pred, width),
        }
    }

    /// Distinct symbols in the 0-based range `[lo, hi]`.
    #[inline]
    pub fn count(&self, lo: usize, hi: usize) -> usize {
        self.wm.count_less(lo, hi + 1, lo as u64 + 1)
    }

    pub fn space_bits(&self) -> u64 {
        self.wm.space_bits()
    }
}

/// Ranges shorter than this are counted by scanning `pred`.
const SHORT_COUNT: usize = 48;

/// An array of symbols with both a reporter and a counter.
#[derive(Clone, Debug, Default)]
pub struct ColorRangeIndex {
    symbols: PackedVec,
    reporter: ColorReporter,
    counter: ColorCounter,
}

impl ColorRangeIndex {
    pub fn new(symbols: &[u32]) -> Self {
        let pred = predecessors(symbols);
        Self {
            symbols: PackedVec::from_slice(symbols),
            reporter: ColorReporter::from_pred(&pred),
            counter: ColorCounter::from_pred(&pred),
        }
    }

    /// Index over the original color ids of `arr`.
    pub fn from_array(arr: &ColorArray) -> Self {
        Self::new(arr.colors())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> u32 {
        self.symbols.get(i) as u32
    }

    pub fn reporter(&self) -> &ColorReporter {
        &self.reporter
    }

    /// Appends every distinct symbol of `[lo, hi]` (0-based) to `out`.
    pub fn report_into(&self, lo: usize, hi: usize, out: &mut Vec<u32>) {
        self.report_capped_into(lo, hi, usize::MAX, out);
    }

    /// Appends at most `cap` distinct symbols; returns whether more exist.
    pub fn report_capped_into(&self, lo: usize, hi: usize, cap: usize, out: &mut Vec<u32>) -> bool {
        self.reporter.each_witness(lo, hi, cap, |p| out.push(self.symbol(p)))
    }

    /// Distinct symbols in the 0-based range `[lo, hi]`.
    #[inline]
    pub fn count(&self, lo: usize, hi: usize) -> usize {
        if hi - lo < SHORT_COUNT {
            let limit = lo as u64;
            let mut n = 0;
            self.reporter.pred.scan(lo, hi, |_, p| {
                n += (p <= limit) as usize;
                true
            });
            return n;
        }
        self.counter.count(lo, hi)
    }

    fn check(&self, a: usize, b: usize) -> Result<()> {
        QuerySpec::new(a, b, 1).validate(self.len())
    }

    /// Distinct colors of the 1-based range `[a, b]`, in no particular order.
    pub fn report_colors(&self, a: usize, b: usize) -> Result<Vec<u32>> {
        self.check(a, b)?;
        let mut out = Vec::new();
        self.report_into(a - 1, b - 1, &mut out);
        Ok(out)
    }

    /// At most `cap` distinct colors of `[a, b]` and whether more remain.
    pub fn report_colors_capped(&self, a: usize, b: usize, cap: usize) -> Result<(Vec<u32>, bool)> {
        if cap == 0 {
            return Err(Error::BadParameter("cap must be at least 1"));
        }
        self.check(a, b)?;
        let mut out = Vec::new();
        let more = self.report_capped_into(a - 1, b - 1, cap, &mut out);
        Ok((out, more))
    }

    /// Number of distinct colors of `[a, b]`.
    pub fn count_colors(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a, b)?;
        Ok(self.count(a - 1, b - 1))
    }

    pub fn space_bits(&self) -> u64 {
        self.symbols.space_bits() + self.reporter.space_bits() + self.counter.space_bits()
    }
}

//! Small-K answers inside short blocks from packed words and a shared
//! lookup table.
//!
//! A block of remapped colors is cut at sample points every `g` positions.
//! The `g + 1` colors between two consecutive samples fit in one machine
//! word. Each word is split into parts of at most 32 bits; every distinct
//! part is interned once in a [`SeqTable`] that stores, for every sub-range
//! of the part, its distinct values in decreasing order. Between samples the
//! block keeps top-`kcap` lists over power-of-two runs of segments.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::packed::{bits_for, PackedVec};
use crate::sort::{union3_desc, union_desc_into};

use super::ListPool;

/// Interned short sequences with precomputed per-sub-range answers.
#[derive(Clone, Debug)]
pub struct SeqTable {
    width: u32,
    part_len: usize,
    keys: BTreeMap<u64, u32>,
    /// Per entry: its length and the index of its first span.
    entries: Vec<(u8, u32)>,
    /// One span into `pool` per sub-range `s <= e`, row by row.
    spans: Vec<(u32, u32)>,
    pool: Vec<u32>,
}

impl SeqTable {
    /// Table for sequences of at most `part_len` values of `width` bits;
    /// a packed sequence must fit in 32 bits.
    pub fn new(width: u32, part_len: usize) -> Self {
        assert!(part_len >= 1 && width as usize * part_len <= 32, "part does not fit a half word");
        Self {
            width,
            part_len,
            keys: BTreeMap::new(),
            entries: Vec::new(),
            spans: Vec::new(),
            pool: Vec::new(),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn part_len(&self) -> usize {
        self.part_len
    }

    /// Number of distinct sequences stored.
    pub fn entries(&self) -> usize {
        self.entries.len()
    }

    /// Returns the id of `seq`, adding it on first sight.
    pub fn intern(&mut self, seq: &[u32]) -> u32 {
        assert!(!seq.is_empty() && seq.len() <= self.part_len);
        let mut key = (seq.len() as u64) << 32;
        for (i, &v) in seq.iter().enumerate() {
            debug_assert!(self.width == 32 || v >> self.width == 0);
            key |= (v as u64) << (i as u32 * self.width);
        }
        if let Some(&id) = self.keys.get(&key) {
            return id;
        }
        let id = self.entries() as u32;
        self.entries.push((seq.len() as u8, self.spans.len() as u32));
        let mut scratch: Vec<u32> = Vec::with_capacity(seq.len());
        for s in 0..seq.len() {
            for e in s..seq.len() {
                scratch.clear();
                scratch.extend_from_slice(&seq[s..=e]);
                scratch.sort_unstable_by(|a, b| b.cmp(a));
                scratch.dedup();
                self.spans.push((self.pool.len() as u32, scratch.len() as u32));
                self.pool.extend_from_slice(&scratch);
            }
        }
        self.keys.insert(key, id);
        id
    }

    /// Distinct values of positions `s..=e` of sequence `id`, largest first.
    #[inline]
    pub fn lookup(&self, id: u32, s: usize, e: usize) -> &[u32] {
        let (n, base) = self.entries[id as usize];
        let n = n as usize;
        debug_assert!(s <= e && e < n);
        let row = s * n - s * s.saturating_sub(1) / 2;
        let (start, len) = self.spans[base as usize + row + (e - s)];
        &self.pool[start as usize..(start + len) as usize]
    }

    /// Drops the construction-time key map.
    pub fn seal(&mut self) {
        self.keys = BTreeMap::new();
    }

    pub fn space_bits(&self) -> u64 {
        self.entries.len() as u64 * 40
            + self.spans.len() as u64 * 64
            + self.pool.len() as u64 * 32
            + self.keys.len() as u64 * 96
    }
}

/// Part length for words of `word_len` values of `width` bits.
pub(crate) fn part_len_for(word_len: usize, width: u32) -> usize {
    word_len.div_ceil(2).min(32 / width.max(1) as usize).max(1)
}

/// A set of short sequences, each stored as table ids of its parts.
#[derive(Clone, Debug, Default)]
pub(crate) struct PackedSeqs {
    part_len: usize,
    parts_per_seq: usize,
    ids: PackedVec,
}

impl PackedSeqs {
    pub(crate) fn new<'a>(seqs: impl Iterator<Item = &'a [u32]>, max_len: usize, table: &mut SeqTable) -> Self {
        let part_len = table.part_len();
        let parts_per_seq = max_len.div_ceil(part_len);
        let mut ids = Vec::new();
        for seq in seqs {
            let before = ids.len();
            for part in seq.chunks(part_len) {
                ids.push(table.intern(part) as u64);
            }
            ids.resize(before + parts_per_seq, 0);
        }
        let max = ids.iter().copied().max().unwrap_or(0);
        let n = ids.len();
        Self {
            part_len,
            parts_per_seq,
            ids: PackedVec::with_width(ids, n, bits_for(max)),
        }
    }

    /// Appends the top `k` distinct values of positions `s..=e` of
    /// sequence `i` to `out`, largest first.
    pub(crate) fn topk(&self, table: &SeqTable, i: usize, s: usize, e: usize, k: usize, out: &mut Vec<u32>) {
        let pl = self.part_len;
        let (p0, p1) = (s / pl, e / pl);
        let base = i * self.parts_per_seq;
        if p0 == p1 {
            let list = table.lookup(self.ids.get(base + p0) as u32, s - p0 * pl, e - p0 * pl);
            out.extend_from_slice(&list[..list.len().min(k)]);
            return;
        }
        let mut acc: Vec<u32> = Vec::new();
        let mut tmp: Vec<u32> = Vec::new();
        for p in p0..=p1 {
            let ls = s.max(p * pl) - p * pl;
            let le = e.min(p * pl + pl - 1) - p * pl;
            let list = table.lookup(self.ids.get(base + p) as u32, ls, le);
            tmp.clear();
            union_desc_into(&acc, list, k, &mut tmp);
            core::mem::swap(&mut acc, &mut tmp);
        }
        out.extend_from_slice(&acc);
    }

    pub(crate) fn space_bits(&self) -> u64 {
        self.ids.space_bits()
    }
}

/// Small-K structure over one block of 1-based remapped colors.
#[derive(Clone, Debug, Default)]
pub(crate) struct FBlock {
    len: usize,
    g: usize,
    /// The block's colors; word `i` is `values.word(i * g, g + 1)`.
    values: PackedVec,
    words: PackedSeqs,
    /// Top lists over `2^r` segments starting at each sample.
    samples: ListPool,
    /// First list id of each radius.
    radius_base: Vec<u32>,
}

impl FBlock {
    /// `colors` are 1-based block colors of at most `table.width()` bits.
    pub(crate) fn new(colors: &[u32], g: usize, kcap: usize, table: &mut SeqTable) -> Self {
        let len = colors.len();
        let values = PackedVec::with_width(colors.iter().map(|&c| c as u64), len, table.width());
        let nwords = len.div_ceil(g);
        let words = PackedSeqs::new(
            (0..nwords).map(|i| &colors[i * g..(i * g + g + 1).min(len)]),
            g + 1,
            table,
        );

        // doubling over full segments
        let nseg = len / g;
        let mut samples = ListPool::default();
        let mut radius_base = Vec::new();
        let mut prev: Vec<Vec<u32>> = (0..nseg)
            .map(|i| {
                let mut v = colors[i * g..(i + 1) * g].to_vec();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v.dedup();
                v.truncate(kcap);
                v
            })
            .collect();
        let mut span = 1;
        while span <= nseg {
            radius_base.push(samples.count() as u32);
            for l in &prev {
                samples.push(l);
            }
            let next: Vec<Vec<u32>> = (0..(nseg + 1).saturating_sub(2 * span))
                .map(|i| {
                    let mut v = Vec::with_capacity(kcap);
                    union_desc_into(&prev[i], &prev[i + span], kcap, &mut v);
                    v
                })
                .collect();
            prev = next;
            span *= 2;
        }
        Self {
            len,
            g,
            values,
            words,
            samples,
            radius_base,
        }
    }

    fn word_topk(&self, table: &SeqTable, i: usize, s: usize, e: usize, k: usize, out: &mut Vec<u32>) {
        self.words.topk(table, i, s, e, k, out);
    }

    /// Replaces `out` with the top `k` colors of block positions `lo..=hi`.
    pub(crate) fn query(&self, table: &SeqTable, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        debug_assert!(lo <= hi && hi < self.len);
        out.clear();
        let g = self.g;
        let i = lo / g;
        if hi <= i * g + g {
            self.word_topk(table, i, lo - i * g, hi - i * g, k, out);
            return;
        }
        let af = lo.div_ceil(g) * g;
        let be = hi / g * g;
        let mut left = Vec::with_capacity(k);
        self.word_topk(table, i, lo - i * g, af - i * g, k, &mut left);
        let mut right = Vec::with_capacity(k);
        self.word_topk(table, be / g, 0, hi - be, k, &mut right);
        let mut mid = Vec::with_capacity(k);
        let segs = (be - af) / g;
        if segs >= 1 {
            let x = segs.ilog2() as usize;
            let base = self.radius_base[x] as usize;
            let first = self.samples.get(base + af / g);
            let second = self.samples.get(base + be / g - (1 << x));
            union_desc_into(first, second, k, &mut mid);
        }
        union3_desc(&left, &mid, &right, k, out);
    }

    pub(crate) fn space_bits(&self) -> u64 {
        self.values.space_bits()
            + self.words.space_bits()
            + self.samples.space_bits()
            + self.radius_base.len() as u64 * 32
    }
}

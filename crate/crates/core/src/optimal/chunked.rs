//! Space reduction to `O(N log sigma)` bits by cutting the array into chunks.
//!
//! Each chunk gets its own optimal structure over the global ranks, so its
//! size depends on the chunk length instead of `N`. Queries that cross chunk
//! boundaries are answered on a summary array holding `sigma` slots per
//! chunk: slot `c` of chunk `i` holds `c + 1` if rank `c` occurs in the chunk
//! and the dummy value 0 otherwise. Since the dummy is the lowest value it
//! can only show up at the end of a summary answer, where it is dropped.
//!
//! With `sigma^2 >= log N` chunks have `sigma^3` elements. Otherwise they
//! have `sigma^2 * floor(log N)` elements and are further cut into pieces of
//! `ceil(log_sigma N)` elements, answered from a shared sequence table with a
//! per-chunk summary over pieces built the same way.

use alloc::vec::Vec;

use crate::index::{SpaceUsage, TopKIndex};
use crate::model::{ColorArray, Palette};
use crate::packed::bits_for;
use crate::sort::union3_desc;
use crate::Result;

use super::fblock::{part_len_for, PackedSeqs, SeqTable};
use super::{BuildOptions, OptimalCore};

/// Summary over groups of `width` consecutive slots of a grouped array.
fn summary_slots<'a>(groups: impl Iterator<Item = &'a [u32]>, sigma: usize) -> Vec<u32> {
    let mut slots = Vec::new();
    for group in groups {
        let base = slots.len();
        slots.resize(base + sigma, 0);
        for &r in group {
            slots[base + r as usize] = r + 1;
        }
    }
    slots
}

/// Answer on summary slots `[lo, hi]` with the dummy removed and values
/// shifted back to ranks.
fn summary_query(core: &OptimalCore, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
    core.query(lo, hi, k, out);
    if out.last() == Some(&0) {
        out.pop();
    }
    for r in out.iter_mut() {
        *r -= 1;
    }
}

#[derive(Clone, Debug)]
struct PieceChunk {
    piece_len: usize,
    pieces: PackedSeqs,
    summary: Option<OptimalCore>,
}

impl PieceChunk {
    fn new(slice: &[u32], sigma: usize, piece_len: usize, table: &mut SeqTable, opts: &BuildOptions) -> Result<Self> {
        let pieces = PackedSeqs::new(slice.chunks(piece_len), piece_len, table);
        let count = slice.len().div_ceil(piece_len);
        let summary = if count >= 3 {
            let slots = summary_slots(slice.chunks(piece_len), sigma);
            Some(OptimalCore::new(&slots, sigma + 1, opts)?)
        } else {
            None
        };
        Ok(Self {
            piece_len,
            pieces,
            summary,
        })
    }

    fn query(&self, table: &SeqTable, sigma: usize, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        out.clear();
        let p = self.piece_len;
        let (pl, ph) = (lo / p, hi / p);
        if pl == ph {
            self.pieces.topk(table, pl, lo - pl * p, hi - pl * p, k, out);
            return;
        }
        let mut left = Vec::with_capacity(k);
        self.pieces.topk(table, pl, lo - pl * p, p - 1, k, &mut left);
        let mut right = Vec::with_capacity(k);
        self.pieces.topk(table, ph, 0, hi - ph * p, k, &mut right);
        let mut mid = Vec::with_capacity(k);
        if ph > pl + 1 {
            let summary = self.summary.as_ref().expect("three or more pieces have a summary");
            summary_query(summary, (pl + 1) * sigma, ph * sigma - 1, k, &mut mid);
        }
        union3_desc(&left, &mid, &right, k, out);
    }

    fn space_bits(&self) -> u64 {
        self.pieces.space_bits() + self.summary.as_ref().map_or(0, OptimalCore::space_bits) + 64
    }
}

#[derive(Clone, Debug)]
enum Chunk {
    Plain(OptimalCore),
    Pieces(PieceChunk),
}

/// Chunk length and piece length (0 when chunks are not split) for `n`
/// elements over `sigma` colors.
pub(crate) fn chunk_shape(n: usize, sigma: usize) -> (usize, usize) {
    let log = if n > 1 { n.ilog2() as usize } else { 1 }.max(1);
    let s = sigma.max(1);
    if s.saturating_mul(s) >= log {
        (s.saturating_pow(3).max(1), 0)
    } else {
        let chunk = (s * s * log).max(1);
        let base = s.max(2);
        let mut piece = 1;
        let mut reach = base;
        while reach < n {
            reach = reach.saturating_mul(base);
            piece += 1;
        }
        (chunk, piece.min(chunk))
    }
}

/// The chunked structure over plain ranks in `[0, sigma)`.
#[derive(Clone, Debug)]
pub(crate) struct ChunkedCore {
    len: usize,
    sigma: usize,
    chunk_len: usize,
    chunks: Vec<Chunk>,
    top: Option<OptimalCore>,
    table: Option<SeqTable>,
}

impl ChunkedCore {
    pub(crate) fn new(ranks: &[u32], sigma: usize, opts: &BuildOptions) -> Result<Self> {
        let n = ranks.len();
        let (chunk_len, piece_len) = chunk_shape(n, sigma);
        let mut table = (piece_len > 0).then(|| {
            let width = bits_for(sigma.saturating_sub(1) as u64).max(1);
            SeqTable::new(width, part_len_for(piece_len, width))
        });
        let mut chunks = Vec::with_capacity(n.div_ceil(chunk_len));
        for slice in ranks.chunks(chunk_len) {
            chunks.push(match table.as_mut() {
                Some(t) => Chunk::Pieces(PieceChunk::new(slice, sigma, piece_len, t, opts)?),
                None => Chunk::Plain(OptimalCore::new(slice, sigma, opts)?),
            });
        }
        let top = if chunks.len() >= 3 {
            let slots = summary_slots(ranks.chunks(chunk_len), sigma);
            Some(OptimalCore::new(&slots, sigma + 1, opts)?)
        } else {
            None
        };
        if let Some(t) = table.as_mut() {
            t.seal();
        }
        Ok(Self {
            len: n,
            sigma,
            chunk_len,
            chunks,
            top,
            table,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    fn chunk_query(&self, c: usize, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        match &self.chunks[c] {
            Chunk::Plain(core) => core.query(lo, hi, k, out),
            Chunk::Pieces(pc) => pc.query(self.table.as_ref().unwrap(), self.sigma, lo, hi, k, out),
        }
    }

    /// Replaces `out` with the top `k` ranks of `[lo, hi]`, highest first.
    pub(crate) fn query(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>) {
        let l = self.chunk_len;
        let (cl, ch) = (lo / l, hi / l);
        if cl == ch {
            self.chunk_query(cl, lo - cl * l, hi - cl * l, k, out);
            return;
        }
        let mut left = Vec::with_capacity(k);
        self.chunk_query(cl, lo - cl * l, l - 1, k, &mut left);
        let mut right = Vec::with_capacity(k);
        self.chunk_query(ch, 0, hi - ch * l, k, &mut right);
        let mut mid = Vec::with_capacity(k);
        if ch > cl + 1 {
            let top = self.top.as_ref().expect("three or more chunks have a summary");
            summary_query(top, (cl + 1) * self.sigma, ch * self.sigma - 1, k, &mut mid);
        }
        union3_desc(&left, &mid, &right, k, out);
    }

    pub(crate) fn space_bits(&self) -> u64 {
        let chunks: u64 = self
            .chunks
            .iter()
            .map(|c| match c {
                Chunk::Plain(core) => core.space_bits(),
                Chunk::Pieces(pc) => pc.space_bits(),
            })
            .sum();
        chunks
            + self.top.as_ref().map_or(0, OptimalCore::space_bits)
            + self.table.as_ref().map_or(0, SeqTable::space_bits)
    }
}

/// Top-K index with `O(K)` queries in `O(N log sigma)` bits.
#[derive(Clone, Debug)]
pub struct ChunkedTopK {
    core: ChunkedCore,
    palette: Palette,
}

impl ChunkedTopK {
    pub fn new(arr: &ColorArray) -> Self {
        Self::with_options(arr, &BuildOptions::default()).expect("unverified build cannot fail")
    }

    pub fn with_options(arr: &ColorArray, opts: &BuildOptions) -> Result<Self> {
        Ok(Self {
            core: ChunkedCore::new(arr.ranks(), arr.sigma(), opts)?,
            palette: arr.palette().clone(),
        })
    }

    pub fn chunk_len(&self) -> usize {
        self.core.chunk_len
    }

    pub fn chunk_count(&self) -> usize {
        self.core.chunks.len()
    }

    /// Whether chunks are cut into table-answered pieces.
    pub fn uses_pieces(&self) -> bool {
        self.core.table.is_some()
    }
}

impl TopKIndex for ChunkedTopK {
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

impl SpaceUsage for ChunkedTopK {
    fn space_bits(&self) -> u64 {
        self.core.space_bits() + self.palette.space_bits()
    }
}

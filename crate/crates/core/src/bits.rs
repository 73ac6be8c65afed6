//! Plain bitvector with rank and select support.
//!
//! Rank keeps, for every 512-bit superblock, the absolute count of ones
//! before it and the 9-bit counts before each of its words, so a rank is
//! two lookups and one popcount. Select binary-searches the superblock
//! counts and then scans inside one superblock.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const WORDS_PER_BLOCK: usize = 8;

/// Bitvector supporting `rank0/rank1` in O(1) and `select0/select1` in O(log n).
///
/// Positions are 1-based in the public API: `rank1(i)` counts ones among bits
/// `1..=i`, and `select1(k)` is the position of the k-th one.
#[derive(Clone, Debug, Default)]
pub struct RankSelectBits {
    words: Vec<u64>,
    /// Pairs per superblock: ones before it, then seven 9-bit counts of ones
    /// before words 1..8 of it. A final pair holds the grand total.
    blocks: Vec<u64>,
    len: usize,
}

impl RankSelectBits {
    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if b {
                *words.last_mut().unwrap() |= 1u64 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from raw words; bits past `len` must be zero.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if len % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let mut blocks = Vec::with_capacity(2 * (words.len() / WORDS_PER_BLOCK + 2));
        let mut acc = 0u64;
        for chunk in words.chunks(WORDS_PER_BLOCK) {
            blocks.push(acc);
            let (mut sub, mut inner) = (0u64, 0u64);
            for (j, w) in chunk.iter().enumerate() {
                if j > 0 {
                    sub |= inner << (9 * (j - 1));
                }
                inner += w.count_ones() as u64;
            }
            for j in chunk.len()..WORDS_PER_BLOCK {
                sub |= inner << (9 * (j - 1));
            }
            blocks.push(sub);
            acc += inner;
        }
        blocks.extend([acc, 0]);
        Self { words, blocks, len }
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
    pub fn count_ones(&self) -> usize {
        self.blocks.get(self.blocks.len().wrapping_sub(2)).copied().unwrap_or(0) as usize
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Bit at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Number of ones in positions `1..=i`, for `i <= len` (checked in
    /// debug builds; see [`Self::checked_rank1`]).
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len, "rank position {i} beyond length {}", self.len);
        let w = i >> 6;
        let sb = w / WORDS_PER_BLOCK;
        let j = w % WORDS_PER_BLOCK;
        let mut r = self.blocks[2 * sb];
        if j > 0 {
            r += (self.blocks[2 * sb + 1] >> (9 * (j - 1))) & 0x1FF;
        }
        let bit = i & 63;
        if bit != 0 {
            r += (self.words[w] & ((1u64 << bit) - 1)).count_ones() as u64;
        }
        r as usize
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn checked_rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfBounds { index: i, len: self.len });
        }
        Ok(self.rank1(i))
    }

    pub fn checked_rank0(&self, i: usize) -> Result<usize> {
        self.checked_rank1(i).map(|r| i - r)
    }

    /// 1-based position of the k-th one, or `None` if there are fewer than k.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.count_ones() {
            return None;
        }
        self.select_impl(k, true)
    }

    /// 1-based position of the k-th zero, or `None` if there are fewer than k.
    pub fn select0(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.count_zeros() {
            return None;
        }
        self.select_impl(k, false)
    }

    fn select_impl(&self, k: usize, ones: bool) -> Option<usize> {
        let before = |sb: usize| -> usize {
            let o = self.blocks[2 * sb] as usize;
            if ones {
                o
            } else {
                (sb * WORDS_PER_BLOCK * 64).min(self.len) - o
            }
        };
        // Last superblock with fewer than k matching bits before it.
        let nsb = self.blocks.len() / 2 - 1;
        let (mut lo, mut hi) = (0usize, nsb);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before(mid) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - before(lo);
        for w in lo * WORDS_PER_BLOCK..self.words.len() {
            let word = if ones { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if remaining <= c {
                let pos = w * 64 + select_in_word(word, remaining as u32) as usize;
                return (pos < self.len).then_some(pos + 1);
            }
            remaining -= c;
        }
        None
    }

    pub fn space_bits(&self) -> u64 {
        (self.words.len() as u64 + self.blocks.len() as u64) * 64
    }
}

/// 0-based index of the k-th (1-based) set bit of `word`.
#[inline]
fn select_in_word(mut word: u64, k: u32) -> u32 {
    for _ in 1..k {
        word &= word - 1;
    }
    word.trailing_zeros()
}

/// Builds a bitvector from a `0`/`1` string, used by tests and fixtures.
pub fn from_bit_str(s: &str) -> RankSelectBits {
    RankSelectBits::from_bools(s.bytes().filter(|b| *b == b'0' || *b == b'1').map(|b| b == b'1'))
}

/// Zeroed word buffer for `len` bits, for builders that set bits directly.
pub(crate) fn zero_words(len: usize) -> Vec<u64> {
    vec![0u64; len.div_ceil(64)]
}

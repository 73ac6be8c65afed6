//! Fixed-width bit-packed integer vectors.

use alloc::vec;
use alloc::vec::Vec;

/// Number of bits needed to store `max_value`.
#[inline]
pub fn bits_for(max_value: u64) -> u32 {
    64 - max_value.leading_zeros()
}

/// An immutable vector of unsigned integers stored at a fixed bit width.
///
/// Width 0 is allowed: every element then reads back as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PackedVec {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl PackedVec {
    /// Packs `values` at the smallest width that fits their maximum.
    pub fn from_slice(values: &[u32]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::with_width(values.iter().map(|&v| v as u64), values.len(), bits_for(max as u64))
    }

    /// Packs `len` values at an explicit width; values must fit.
    pub fn with_width(values: impl IntoIterator<Item = u64>, len: usize, width: u32) -> Self {
        assert!(width <= 64);
        let total = len as u64 * width as u64;
        // One spare word keeps unaligned reads branch-free.
        let mut words = vec![0u64; (total as usize).div_ceil(64) + 1];
        let mut count = 0;
        for (i, v) in values.into_iter().enumerate() {
            debug_assert!(width == 64 || v >> width == 0, "value {v} exceeds width {width}");
            if width == 0 {
                count += 1;
                continue;
            }
            let pos = i as u64 * width as u64;
            let w = (pos >> 6) as usize;
            let off = (pos & 63) as u32;
            words[w] |= v << off;
            if off + width > 64 {
                words[w + 1] |= v >> (64 - off);
            }
            count += 1;
        }
        assert_eq!(count, len, "iterator length mismatch");
        Self { words, width, len }
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
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline(always)]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        self.get_bits(i as u64 * self.width as u64, self.width)
    }

    /// Reads `nbits <= 64` bits starting at bit offset `pos`.
    #[inline(always)]
    pub fn get_bits(&self, pos: u64, nbits: u32) -> u64 {
        if nbits == 0 {
            return 0;
        }
        let w = (pos >> 6) as usize;
        let off = (pos & 63) as u32;
        let mut v = self.words[w] >> off;
        if off + nbits > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if nbits == 64 {
            v
        } else {
            v & ((1u64 << nbits) - 1)
        }
    }

    /// Calls `f(i, value)` for `i` in `l..=r` in order until it returns
    /// false. Returns whether it stopped early.
    #[inline]
    pub fn scan(&self, l: usize, r: usize, mut f: impl FnMut(usize, u64) -> bool) -> bool {
        let w = self.width;
        let mask = if w == 64 { !0 } else { (1u64 << w) - 1 };
        let mut pos = l as u64 * w as u64;
        for i in l..=r {
            let v = if w == 0 {
                0
            } else {
                let at = (pos >> 6) as usize;
                let off = (pos & 63) as u32;
                let mut v = self.words[at] >> off;
                if off + w > 64 {
                    v |= self.words[at + 1] << (64 - off);
                }
                v & mask
            };
            if !f(i, v) {
                return true;
            }
            pos += w as u64;
        }
        false
    }

    /// Packed bits of elements `start..start + count`, low element first.
    #[inline]
    pub fn word(&self, start: usize, count: usize) -> u64 {
        self.get_bits(start as u64 * self.width as u64, count as u32 * self.width)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().map(|v| v as u32).collect()
    }

    /// Payload size in bits.
    pub fn space_bits(&self) -> u64 {
        self.words.len() as u64 * 64
    }
}

/// Splits a packed word of `count` elements of `width` bits back into values.
pub fn unpack_word(word: u64, count: usize, width: u32) -> Vec<u32> {
    let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    (0..count)
        .map(|i| ((word >> (i as u32 * width)) & mask) as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_width_reads_zero() {
        let p = PackedVec::from_slice(&[0, 0, 0]);
        assert_eq!(p.width(), 0);
        assert_eq!(p.to_vec(), vec![0, 0, 0]);
    }

    #[test]
    fn straddles_word_boundary() {
        let vals: Vec<u32> = (0..100).map(|i| (i * 37) % 128).collect();
        let p = PackedVec::from_slice(&vals);
        assert_eq!(p.width(), 7);
        assert_eq!(p.to_vec(), vals);
    }

    proptest! {
        #[test]
        fn roundtrip(vals in proptest::collection::vec(any::<u32>(), 0..300), shift in 0u32..32) {
            let vals: Vec<u32> = vals.into_iter().map(|v| v >> shift).collect();
            let p = PackedVec::from_slice(&vals);
            prop_assert_eq!(p.to_vec(), vals.clone());
            // word() agrees with element reads for short windows
            if p.width() > 0 && !vals.is_empty() {
                let per = (64 / p.width()) as usize;
                let cnt = per.min(vals.len());
                let w = p.word(0, cnt);
                prop_assert_eq!(unpack_word(w, cnt, p.width()), vals[..cnt].to_vec());
            }
        }
    }
}

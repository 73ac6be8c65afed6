//! Sorting and merging of rank lists.

use alloc::vec;
use alloc::vec::Vec;

/// Below this length a comparison sort beats the radix passes.
pub(crate) const RADIX_THRESHOLD: usize = 256;

/// Sorts ranks in decreasing order. Ranks are bounded by `universe`, so long
/// lists go through an LSD radix sort with 8-bit digits.
pub(crate) fn sort_desc(v: &mut Vec<u32>, universe: usize) {
    if v.len() < RADIX_THRESHOLD {
        v.sort_unstable_by(|a, b| b.cmp(a));
        return;
    }
    let bits = usize::BITS - universe.max(1).leading_zeros();
    let passes = bits.div_ceil(8).max(1);
    let mut buf = vec![0u32; v.len()];
    for pass in 0..passes {
        let shift = pass * 8;
        let mut counts = [0u32; 257];
        for &x in v.iter() {
            // complemented digit yields descending order
            counts[(255 - ((x >> shift) & 255)) as usize + 1] += 1;
        }
        for i in 1..257 {
            counts[i] += counts[i - 1];
        }
        for &x in v.iter() {
            let d = (255 - ((x >> shift) & 255)) as usize;
            buf[counts[d] as usize] = x;
            counts[d] += 1;
        }
        core::mem::swap(v, &mut buf);
    }
}

/// Appends to `out` the first `k` distinct values of the union of two
/// descending lists, in descending order.
pub(crate) fn union_desc_into(x: &[u32], y: &[u32], k: usize, out: &mut Vec<u32>) {
    let start = out.len();
    let (mut i, mut j) = (0, 0);
    while out.len() - start < k {
        let next = match (x.get(i), y.get(j)) {
            (Some(&a), Some(&b)) => {
                if a > b {
                    i += 1;
                    a
                } else if b > a {
                    j += 1;
                    b
                } else {
                    i += 1;
                    j += 1;
                    a
                }
            }
            (Some(&a), None) => {
                i += 1;
                a
            }
            (None, Some(&b)) => {
                j += 1;
                b
            }
            (None, None) => break,
        };
        out.push(next);
    }
}

/// Top `k` distinct values across three descending lists.
pub(crate) fn union3_desc(x: &[u32], y: &[u32], z: &[u32], k: usize, out: &mut Vec<u32>) {
    let mut tmp = Vec::with_capacity(k.min(x.len() + y.len()));
    union_desc_into(x, y, k, &mut tmp);
    out.clear();
    union_desc_into(&tmp, z, k, out);
}

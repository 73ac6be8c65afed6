//! Suffix array construction by prefix doubling.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Suffix array of `text` in `O(n log^2 n)` time.
pub fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<u32> = text.iter().map(|&b| b as u32).collect();
    let mut tmp = vec![0u32; n];
    let mut k = 1;
    loop {
        let key = |i: u32| -> u64 {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            ((rank[i] as u64) << 32) | second
        };
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = (key(sa[w - 1]) != key(sa[w])) as u32;
            tmp[sa[w] as usize] = tmp[sa[w - 1] as usize] + bump;
        }
        core::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Compares the first `p.len()` bytes of the suffix at `pos` with `p`.
#[inline]
pub(crate) fn cmp_prefix(text: &[u8], pos: usize, p: &[u8]) -> Ordering {
    let end = (pos + p.len()).min(text.len());
    text[pos..end].cmp(p)
}

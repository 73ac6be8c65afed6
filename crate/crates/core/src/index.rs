use alloc::vec::Vec;

use crate::model::{ColorList, Palette, QuerySpec};
use crate::Result;

/// Common query surface of every top-K index variant.
pub trait TopKIndex {
    /// Length of the indexed array.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn palette(&self) -> &Palette;

    /// Replaces `out` with the ranks of the top `k` colors of the 0-based
    /// inclusive range `[lo, hi]`, highest rank first.
    ///
    /// Callers guarantee `lo <= hi < len()` and `k >= 1`.
    fn topk_ranks(&self, lo: usize, hi: usize, k: usize, out: &mut Vec<u32>);

    /// Validated top-K query on a 1-based range.
    fn topk(&self, q: QuerySpec) -> Result<ColorList> {
        q.validate(self.len())?;
        let (lo, hi) = q.bounds0();
        let mut ranks = Vec::with_capacity(q.k.min(self.palette().sigma()));
        self.topk_ranks(lo, hi, q.k, &mut ranks);
        Ok(self.palette().to_list(&ranks))
    }
}

/// Measured payload size of a structure.
pub trait SpaceUsage {
    fn space_bits(&self) -> u64;
}

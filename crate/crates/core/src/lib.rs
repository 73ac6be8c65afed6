//! Top-K color reporting over static arrays.
//!
//! Every position of an array carries a color, and every color carries a
//! static priority. A top-K query on `[a, b]` returns the `K` distinct
//! colors of `A[a..=b]` with the highest priorities, highest first.
//!
//! The crate provides a ladder of indexes answering that query:
//!
//! - [`WaveletTopK`]: wavelet tree with per-node reporting/counting
//!   structures, `O(log^2 N + K)` per query.
//! - [`SparseTopK`]: the same tree with auxiliary structures kept only on a
//!   constant number of levels, `O(N^{1/f} + K)` per query.
//! - [`OptimalTopK`]: precomputed answers on a recursive grid of exponentially
//!   shrinking blocks, `O(K)` per query.
//! - [`ChunkedTopK`]: the optimal structure applied per chunk plus a summary
//!   array, bringing space down to `O(N log sigma)` bits.
//!
//! On top of these, [`ColorStream`] reports colors online in priority order
//! and the [`docs`] module applies them to ranked document retrieval.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod bits;
pub mod docs;
pub mod model;
pub mod online;
pub mod optimal;
pub mod packed;
pub mod primitives;
pub mod sparse;
pub mod wavelet;

mod index;
mod sort;

pub use error::{Error, Result};
pub use index::{SpaceUsage, TopKIndex};
pub use model::{
    oracle_distinct_count, oracle_topk, prank, ColorArray, ColorEntry, ColorList, Palette,
    QuerySpec,
};
pub use online::ColorStream;
pub use optimal::{two_list_union, BuildOptions, ChunkedTopK, OptimalTopK};
pub use sparse::SparseTopK;
pub use wavelet::WaveletTopK;

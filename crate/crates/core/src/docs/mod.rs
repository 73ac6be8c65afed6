//! Ranked retrieval over a collection of documents.
//!
//! Documents are concatenated, each followed by a `0x00` separator, and
//! indexed with a suffix array. The document array assigns every suffix
//! array slot the document its suffix starts in, so the occurrences of a
//! pattern form one slot range and the highest-ranked documents containing
//! it are a top-K color query on that range. Slots of separator suffixes get
//! a dummy color below every document; no pattern range ever contains them.
//!
//! For "at least `t` occurrences" queries, every `t`-th occurrence slot of
//! each document (in slot order) is kept as an anchor. A document with `t`
//! occurrences in a slot range has an anchor in it, so the anchors of the
//! range, streamed in rank order and checked against exact occurrence
//! counts, yield the answer.

mod merge;
mod suffix;

pub mod relevance;

use alloc::vec;
use alloc::vec::Vec;

use crate::index::{SpaceUsage, TopKIndex};
use crate::model::{ColorArray, QuerySpec};
use crate::online::ColorStream;
use crate::optimal::{BuildOptions, ChunkedTopK};
use crate::{Error, Result};

pub use merge::{oracle_merge, RangeHeapMerger};
pub use suffix::suffix_array;

/// Byte placed after every document.
pub const SEPARATOR: u8 = 0;

/// Documents with a static rank each; ids are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentCollection {
    docs: Vec<Vec<u8>>,
    ranks: Vec<u64>,
}

impl DocumentCollection {
    pub fn new(docs: Vec<Vec<u8>>, ranks: Vec<u64>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::EmptyCollection);
        }
        if ranks.len() != docs.len() {
            return Err(Error::BadParameter("one rank per document is required"));
        }
        if let Some(i) = docs.iter().position(|d| d.contains(&SEPARATOR)) {
            return Err(Error::SeparatorInContent(i + 1));
        }
        Ok(Self { docs, ranks })
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Document `id` (1-based).
    pub fn doc(&self, id: u32) -> &[u8] {
        &self.docs[id as usize - 1]
    }

    pub fn rank(&self, id: u32) -> u64 {
        self.ranks[id as usize - 1]
    }

    pub fn docs(&self) -> &[Vec<u8>] {
        &self.docs
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    /// Indexed text length, separators included.
    pub fn total_len(&self) -> usize {
        self.docs.iter().map(|d| d.len() + 1).sum()
    }

    /// Longest document length.
    pub fn max_len(&self) -> usize {
        self.docs.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Build settings of a [`DocumentIndex`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DocOptions {
    /// Largest supported `t`; anchors are built for every power of two up
    /// to it. Defaults to the longest document length.
    pub max_t: Option<usize>,
    pub build: BuildOptions,
}

#[derive(Clone, Debug)]
struct Anchors {
    t: usize,
    /// Slots of the anchors, increasing.
    slots: Vec<u32>,
    index: ChunkedTopK,
}

/// Suffix array, document array and retrieval structures of a collection.
#[derive(Clone, Debug)]
pub struct DocumentIndex {
    coll: DocumentCollection,
    text: Vec<u8>,
    sa: Vec<u32>,
    doc_array: Vec<u32>,
    topk: ChunkedTopK,
    /// Sorted slots of each document, indexed by id - 1.
    occurrences: Vec<Vec<u32>>,
    anchors: Vec<Anchors>,
    max_t: usize,
}

impl DocumentIndex {
    pub fn new(coll: DocumentCollection) -> Result<Self> {
        Self::with_options(coll, &DocOptions::default())
    }

    pub fn with_options(coll: DocumentCollection, opts: &DocOptions) -> Result<Self> {
        let mut text = Vec::with_capacity(coll.total_len());
        let mut owner = Vec::with_capacity(coll.total_len());
        for (i, d) in coll.docs.iter().enumerate() {
            text.extend_from_slice(d);
            owner.extend(core::iter::repeat_n(i as u32 + 1, d.len()));
            text.push(SEPARATOR);
            owner.push(0);
        }
        let sa = suffix_array(&text);
        let doc_array: Vec<u32> = sa.iter().map(|&p| owner[p as usize]).collect();

        // color 0 is the dummy; it ties at worst and loses on id
        let mut priorities = vec![0u64];
        priorities.extend_from_slice(&coll.ranks);
        let arr = ColorArray::from_priorities(doc_array.clone(), priorities.clone())?;
        let topk = ChunkedTopK::with_options(&arr, &opts.build)?;

        let mut occurrences = vec![Vec::new(); coll.len()];
        for (slot, &d) in doc_array.iter().enumerate() {
            if d != 0 {
                occurrences[d as usize - 1].push(slot as u32);
            }
        }

        let max_t = opts.max_t.unwrap_or(coll.max_len()).max(1);
        let mut anchors = Vec::new();
        let mut t = 2;
        while t <= max_t {
            let mut slots: Vec<u32> = occurrences
                .iter()
                .flat_map(|occ| occ.iter().skip(t - 1).step_by(t).copied())
                .collect();
            slots.sort_unstable();
            if !slots.is_empty() {
                let colors = slots.iter().map(|&s| doc_array[s as usize]).collect();
                let arr = ColorArray::from_priorities(colors, priorities.clone())?;
                anchors.push(Anchors {
                    t,
                    slots,
                    index: ChunkedTopK::with_options(&arr, &opts.build)?,
                });
            }
            t *= 2;
        }

        Ok(Self {
            coll,
            text,
            sa,
            doc_array,
            topk,
            occurrences,
            anchors,
            max_t,
        })
    }

    pub fn collection(&self) -> &DocumentCollection {
        &self.coll
    }

    /// Number of suffix array slots, separators included.
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Owning document of each slot; 0 marks separator suffixes.
    pub fn document_array(&self) -> &[u32] {
        &self.doc_array
    }

    pub fn max_t(&self) -> usize {
        self.max_t
    }

    /// 1-based slot range of the suffixes starting with `p`, if any.
    pub fn pattern_range(&self, p: &[u8]) -> Option<(usize, usize)> {
        if p.is_empty() || p.contains(&SEPARATOR) {
            return None;
        }
        let sp = self
            .sa
            .partition_point(|&s| suffix::cmp_prefix(&self.text, s as usize, p) == core::cmp::Ordering::Less);
        let end = self
            .sa
            .partition_point(|&s| suffix::cmp_prefix(&self.text, s as usize, p) != core::cmp::Ordering::Greater);
        (sp < end).then_some((sp + 1, end))
    }

    /// The `k` highest-ranked documents containing `p`, as `(id, rank)`.
    pub fn ranked_list(&self, p: &[u8], k: usize) -> Vec<(u32, u64)> {
        let Some((sp, ep)) = self.pattern_range(p) else {
            return Vec::new();
        };
        if k == 0 {
            return Vec::new();
        }
        let list = self.topk.topk(QuerySpec::new(sp, ep, k)).expect("pattern range is valid");
        list.entries
            .into_iter()
            .filter(|e| e.color != 0)
            .map(|e| (e.color, e.priority))
            .collect()
    }

    /// Occurrences of the pattern with slot range `[sp, ep]` in document `d`.
    fn count_in(&self, d: u32, sp: usize, ep: usize) -> usize {
        let occ = &self.occurrences[d as usize - 1];
        let lo = occ.partition_point(|&s| (s as usize) < sp - 1);
        let hi = occ.partition_point(|&s| (s as usize) < ep);
        hi - lo
    }

    /// The `k` highest-ranked documents containing `p` at least `t` times.
    pub fn t_mine(&self, p: &[u8], t: usize, k: usize) -> Result<Vec<(u32, u64)>> {
        if t == 0 || k == 0 {
            return Err(Error::BadParameter("t and k must be at least 1"));
        }
        if t > self.max_t {
            return Err(Error::UnsupportedT { t, max: self.max_t });
        }
        if t == 1 {
            return Ok(self.ranked_list(p, k));
        }
        let Some((sp, ep)) = self.pattern_range(p) else {
            return Ok(Vec::new());
        };
        let Some(anchors) = self.anchors.iter().rev().find(|a| a.t <= t) else {
            return Ok(Vec::new());
        };
        let lo = anchors.slots.partition_point(|&s| (s as usize) < sp - 1);
        let hi = anchors.slots.partition_point(|&s| (s as usize) < ep);
        if lo == hi {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for e in ColorStream::open(&anchors.index, lo + 1, hi)? {
            if self.count_in(e.color, sp, ep) >= t {
                out.push((e.color, e.priority));
                if out.len() == k {
                    break;
                }
            }
        }
        Ok(out)
    }
}

impl SpaceUsage for DocumentIndex {
    fn space_bits(&self) -> u64 {
        let n = self.sa.len() as u64;
        let anchors: u64 = self
            .anchors
            .iter()
            .map(|a| a.slots.len() as u64 * 32 + a.index.space_bits())
            .sum();
        n * 8 + n * 32 * 3 + self.topk.space_bits() + anchors
    }
}

/// Overlapping occurrences of `p` in `doc`.
pub fn count_occurrences(doc: &[u8], p: &[u8]) -> usize {
    if p.is_empty() || p.len() > doc.len() {
        return 0;
    }
    doc.windows(p.len()).filter(|w| *w == p).count()
}

fn by_rank_desc(coll: &DocumentCollection, mut ids: Vec<u32>, k: usize) -> Vec<(u32, u64)> {
    ids.sort_unstable_by_key(|&d| core::cmp::Reverse((coll.rank(d), d)));
    ids.into_iter().take(k).map(|d| (d, coll.rank(d))).collect()
}

/// Reference ranked listing by scanning every document.
pub fn oracle_ranked_list(coll: &DocumentCollection, p: &[u8], k: usize) -> Vec<(u32, u64)> {
    oracle_t_mine(coll, p, 1, k)
}

/// Reference t-mine by counting occurrences in every document.
pub fn oracle_t_mine(coll: &DocumentCollection, p: &[u8], t: usize, k: usize) -> Vec<(u32, u64)> {
    let ids = (1..=coll.len() as u32)
        .filter(|&d| count_occurrences(coll.doc(d), p) >= t.max(1))
        .collect();
    by_rank_desc(coll, ids, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coll(docs: &[&str], ranks: &[u64]) -> DocumentCollection {
        DocumentCollection::new(docs.iter().map(|d| d.as_bytes().to_vec()).collect(), ranks.to_vec()).unwrap()
    }

    #[test]
    fn document_array_layout() {
        let ix = DocumentIndex::new(coll(&["ab", "ba"], &[2, 1])).unwrap();
        assert_eq!(ix.len(), 6);
        for (slot, &pos) in ix.suffix_array().iter().enumerate() {
            let pos = pos as usize;
            let want = if ix.text()[pos] == SEPARATOR { 0 } else if pos < 3 { 1 } else { 2 };
            assert_eq!(ix.document_array()[slot], want);
        }
        let single = DocumentIndex::new(coll(&["abc"], &[1])).unwrap();
        assert!(single.document_array().iter().all(|&d| d <= 1));
        let twins = DocumentIndex::new(coll(&["xy", "xy"], &[1, 2])).unwrap();
        let (sp, ep) = twins.pattern_range(b"x").unwrap();
        let mut ds: Vec<u32> = twins.document_array()[sp - 1..ep].to_vec();
        ds.sort_unstable();
        assert_eq!(ds, vec![1, 2]);
    }

    #[test]
    fn collection_errors() {
        assert_eq!(DocumentCollection::new(vec![], vec![]), Err(Error::EmptyCollection));
        assert_eq!(
            DocumentCollection::new(vec![b"a".to_vec(), b"b\0".to_vec()], vec![1, 2]),
            Err(Error::SeparatorInContent(2))
        );
    }

    #[test]
    fn pattern_range_examples() {
        let ix = DocumentIndex::new(coll(&["abab", "bab"], &[1, 2])).unwrap();
        let (sp, ep) = ix.pattern_range(b"ab").unwrap();
        assert_eq!(ep - sp + 1, 3);
        assert_eq!(ix.pattern_range(b"zz"), None);
        let (sp, ep) = ix.pattern_range(b"abab").unwrap();
        assert_eq!(sp, ep);
    }

    #[test]
    fn ranked_list_examples() {
        let ix = DocumentIndex::new(coll(&["abab", "bab", "ca"], &[3, 9, 5])).unwrap();
        assert_eq!(ix.ranked_list(b"ab", 2), vec![(2, 9), (1, 3)]);
        assert_eq!(ix.ranked_list(b"ca", 5), vec![(3, 5)]);
        assert_eq!(ix.ranked_list(b"q", 5), vec![]);
    }

    #[test]
    fn t_mine_examples() {
        let ix = DocumentIndex::new(coll(&["ababab", "abba"], &[4, 6])).unwrap();
        assert_eq!(ix.t_mine(b"ab", 3, 1), Ok(vec![(1, 4)]));
        assert_eq!(ix.t_mine(b"ab", 1, 5), Ok(ix.ranked_list(b"ab", 5)));
        assert_eq!(ix.t_mine(b"ab", 4, 5), Ok(vec![]));
        assert_eq!(ix.t_mine(b"ab", 7, 5), Err(Error::UnsupportedT { t: 7, max: 6 }));
    }

    fn arb_corpus() -> impl Strategy<Value = DocumentCollection> {
        proptest::collection::vec(
            (proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b'), Just(b'c')], 0..40), 0u64..20),
            1..12,
        )
        .prop_map(|docs| {
            let (d, r): (Vec<_>, Vec<_>) = docs.into_iter().unzip();
            DocumentCollection::new(d, r).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_naive(c in arb_corpus(), pats in proptest::collection::vec((0usize..64, 1usize..5), 20)) {
            let ix = DocumentIndex::new(c.clone()).unwrap();
            let text = ix.text().to_vec();
            for (start, len) in pats {
                let start = start % text.len();
                let p: Vec<u8> = text[start..(start + len).min(text.len())]
                    .iter().copied().filter(|&b| b != SEPARATOR).collect();
                if p.is_empty() {
                    continue;
                }
                let naive_count: usize = c.docs().iter().map(|d| count_occurrences(d, &p)).sum();
                let got = ix.pattern_range(&p).map_or(0, |(a, b)| b - a + 1);
                prop_assert_eq!(got, naive_count);
                for k in [1, 3, 20] {
                    prop_assert_eq!(ix.ranked_list(&p, k), oracle_ranked_list(&c, &p, k));
                    for t in [2, 4, 8] {
                        if t <= ix.max_t() {
                            prop_assert_eq!(ix.t_mine(&p, t, k).unwrap(), oracle_t_mine(&c, &p, t, k));
                        }
                    }
                }
            }
        }
    }
}

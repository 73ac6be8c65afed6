//! The color-array data model, query types and brute-force oracles.
//!
//! Colors are identified externally by `u32` ids with `u64` priorities.
//! Internally every index works on *ranks*: the 0-based position of a color
//! in the strict order by `(priority, color id)`. A larger rank means a higher
//! priority, so ranks can be compared directly and sorted with integer sorts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A reported color together with its original priority.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColorEntry {
    pub color: u32,
    pub priority: u64,
}

impl ColorEntry {
    pub fn new(color: u32, priority: u64) -> Self {
        Self { color, priority }
    }

    /// Key of the normalized strict order.
    #[inline]
    pub fn order_key(&self) -> (u64, u32) {
        (self.priority, self.color)
    }
}

/// Map between ranks and colors for one array.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Palette {
    by_rank: Vec<ColorEntry>,
    rank_of: Vec<u32>,
}

impl Palette {
    /// Builds the palette from priorities indexed by color id.
    pub fn from_priorities(priorities: &[u64]) -> Self {
        let mut order: Vec<u32> = (0..priorities.len() as u32).collect();
        order.sort_unstable_by_key(|&c| (priorities[c as usize], c));
        let mut rank_of = vec![0u32; priorities.len()];
        for (r, &c) in order.iter().enumerate() {
            rank_of[c as usize] = r as u32;
        }
        let by_rank = order
            .iter()
            .map(|&c| ColorEntry::new(c, priorities[c as usize]))
            .collect();
        Self { by_rank, rank_of }
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.by_rank.len()
    }

    #[inline]
    pub fn entry(&self, rank: u32) -> ColorEntry {
        self.by_rank[rank as usize]
    }

    #[inline]
    pub fn rank_of(&self, color: u32) -> u32 {
        self.rank_of[color as usize]
    }

    /// Converts a rank list (highest first) into a [`ColorList`].
    pub fn to_list(&self, ranks: &[u32]) -> ColorList {
        ColorList {
            entries: ranks.iter().map(|&r| self.entry(r)).collect(),
        }
    }

    pub fn space_bits(&self) -> u64 {
        self.by_rank.len() as u64 * 96 + self.rank_of.len() as u64 * 32
    }
}

/// The indexed sequence: a color per position plus a priority per color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorArray {
    colors: Vec<u32>,
    ranks: Vec<u32>,
    priorities: Vec<u64>,
    palette: Palette,
}

impl ColorArray {
    /// Validates `colors` against a priority map over the color universe
    /// `[0, sigma)`. Every color in the universe needs a priority.
    pub fn new(colors: Vec<u32>, sigma: u32, priorities: &BTreeMap<u32, u64>) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::BadParameter("sigma must be at least 1"));
        }
        let mut dense = Vec::with_capacity(sigma as usize);
        for c in 0..sigma {
            match priorities.get(&c) {
                Some(&p) => dense.push(p),
                None => return Err(Error::MissingPriority(c)),
            }
        }
        Self::from_priorities(colors, dense)
    }

    /// Uses `priorities[c]` as the priority of color `c`; sigma is its length.
    pub fn from_priorities(colors: Vec<u32>, priorities: Vec<u64>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::EmptyArray);
        }
        if priorities.is_empty() {
            return Err(Error::BadParameter("sigma must be at least 1"));
        }
        let sigma = priorities.len() as u32;
        if let Some(&c) = colors.iter().find(|&&c| c >= sigma) {
            return Err(Error::ColorOutOfRange { color: c, sigma });
        }
        let palette = Palette::from_priorities(&priorities);
        let ranks = colors.iter().map(|&c| palette.rank_of(c)).collect();
        Ok(Self {
            colors,
            ranks,
            priorities,
            palette,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.priorities.len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Per-position priority ranks in `[0, sigma)`.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn priorities(&self) -> &[u64] {
        &self.priorities
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    /// Normalized 1-based priority rank of color `c`.
    pub fn normalized_priority(&self, c: u32) -> u32 {
        self.palette.rank_of(c) + 1
    }
}

/// Priority-descending list of distinct colors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColorList {
    pub entries: Vec<ColorEntry>,
}

impl ColorList {
    pub fn from_pairs(pairs: &[(u32, u64)]) -> Self {
        Self {
            entries: pairs.iter().map(|&(c, p)| ColorEntry::new(c, p)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, u64)> {
        self.entries.iter().map(|e| (e.color, e.priority)).collect()
    }

    /// Strictly decreasing in the normalized order, with distinct colors.
    pub fn is_well_formed(&self) -> bool {
        let strictly_desc = self
            .entries
            .windows(2)
            .all(|w| w[0].order_key() > w[1].order_key());
        let mut seen: Vec<u32> = self.entries.iter().map(|e| e.color).collect();
        seen.sort_unstable();
        strictly_desc && seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// A top-K query over the 1-based inclusive range `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

impl QuerySpec {
    pub fn new(a: usize, b: usize, k: usize) -> Self {
        Self { a, b, k }
    }

    /// `K = 0` is rejected as an invalid query.
    pub fn validate(&self, len: usize) -> Result<()> {
        if self.a == 0 || self.a > self.b || self.b > len || self.k == 0 {
            return Err(Error::InvalidRange {
                a: self.a,
                b: self.b,
                k: self.k,
                len,
            });
        }
        Ok(())
    }

    /// 0-based inclusive bounds.
    #[inline]
    pub fn bounds0(&self) -> (usize, usize) {
        (self.a - 1, self.b - 1)
    }
}

fn check_range(arr: &ColorArray, a: usize, b: usize, k: usize) -> Result<()> {
    QuerySpec::new(a, b, k).validate(arr.len())
}

/// Reference answer by exhaustive scan: distinct colors of `A[a..=b]`,
/// sorted by priority, truncated to `K`.
pub fn oracle_topk(arr: &ColorArray, q: QuerySpec) -> Result<ColorList> {
    check_range(arr, q.a, q.b, q.k)?;
    let mut seen = vec![false; arr.sigma()];
    let mut ranks: Vec<u32> = Vec::new();
    for &r in &arr.ranks()[q.a - 1..q.b] {
        if !seen[r as usize] {
            seen[r as usize] = true;
            ranks.push(r);
        }
    }
    ranks.sort_unstable_by(|x, y| y.cmp(x));
    ranks.truncate(q.k);
    Ok(arr.palette().to_list(&ranks))
}

/// Exact number of distinct colors in `A[a..=b]`.
pub fn oracle_distinct_count(arr: &ColorArray, a: usize, b: usize) -> Result<usize> {
    check_range(arr, a, b, 1)?;
    let mut seen = vec![false; arr.sigma()];
    let mut count = 0;
    for &c in &arr.colors()[a - 1..b] {
        if !seen[c as usize] {
            seen[c as usize] = true;
            count += 1;
        }
    }
    Ok(count)
}

/// 1-based rank of `p(c)` among the priorities of `colorset`, ties broken by
/// color id.
pub fn prank(c: u32, colorset: &BTreeMap<u32, u64>) -> Result<usize> {
    let &p = colorset.get(&c).ok_or(Error::ColorNotInSet(c))?;
    Ok(colorset
        .iter()
        .filter(|&(&c2, &p2)| (p2, c2) <= (p, c))
        .count())
}

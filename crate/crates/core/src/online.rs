//! Online reporting: colors of a range in priority order, one at a time.
//!
//! The stream runs in stages. Stage `i` emits the entries of rank `2^i` to
//! `2^(i+1) - 1` (1-based, highest first), taken from a top-`(2^(i+1) - 1)`
//! query with its first `2^i - 1` entries dropped. The list of stage `i + 1`
//! is computed when stage `i` starts emitting, so it is ready by the time
//! stage `i` runs out. A query that returns fewer entries than requested
//! marks its stage as the last one.

use alloc::vec::Vec;

use crate::index::TopKIndex;
use crate::model::{ColorEntry, QuerySpec};
use crate::Result;

/// Lazily emits the distinct colors of a range, highest priority first.
#[derive(Debug)]
pub struct ColorStream<'a, I: TopKIndex + ?Sized> {
    index: &'a I,
    lo: usize,
    hi: usize,
    stage: u32,
    current: Vec<u32>,
    pos: usize,
    current_last: bool,
    next: Option<(Vec<u32>, bool)>,
    scratch: Vec<u32>,
    requested: usize,
}

impl<'a, I: TopKIndex + ?Sized> ColorStream<'a, I> {
    /// Opens a stream over the 1-based range `[a, b]`.
    pub fn open(index: &'a I, a: usize, b: usize) -> Result<Self> {
        QuerySpec::new(a, b, 1).validate(index.len())?;
        let mut s = Self {
            index,
            lo: a - 1,
            hi: b - 1,
            stage: 0,
            current: Vec::new(),
            pos: 0,
            current_last: false,
            next: None,
            scratch: Vec::new(),
            requested: 0,
        };
        let (list, last) = s.stage_list(0);
        s.current = list;
        s.current_last = last;
        Ok(s)
    }

    /// Entries `2^i ..= 2^(i+1) - 1` and whether no entries follow them.
    fn stage_list(&mut self, i: u32) -> (Vec<u32>, bool) {
        let want = (1usize << (i + 1)) - 1;
        self.requested += want;
        self.index.topk_ranks(self.lo, self.hi, want, &mut self.scratch);
        let last = self.scratch.len() < want;
        let skip = ((1usize << i) - 1).min(self.scratch.len());
        (self.scratch[skip..].to_vec(), last)
    }

    /// Next rank of the stream, or `None` once the range is exhausted.
    pub fn next_rank(&mut self) -> Option<u32> {
        if self.pos == self.current.len() {
            if self.current_last {
                return None;
            }
            let (list, last) = match self.next.take() {
                Some(n) => n,
                None => self.stage_list(self.stage + 1),
            };
            self.stage += 1;
            self.current = list;
            self.current_last = last;
            self.pos = 0;
            if self.current.is_empty() {
                return None;
            }
        }
        if self.pos == 0 && !self.current_last && self.next.is_none() {
            let upcoming = self.stage_list(self.stage + 1);
            self.next = Some(upcoming);
        }
        let r = self.current[self.pos];
        self.pos += 1;
        Some(r)
    }

    /// Total number of entries requested from the index so far.
    pub fn requested(&self) -> usize {
        self.requested
    }
}

impl<I: TopKIndex + ?Sized> Iterator for ColorStream<'_, I> {
    type Item = ColorEntry;

    fn next(&mut self) -> Option<ColorEntry> {
        self.next_rank().map(|r| self.index.palette().entry(r))
    }
}

//! Worst-case linear selection and k-chunk-sort, both in descending order.
//!
//! A k-chunk-sort permutes an array into consecutive chunks such that every
//! key in an earlier chunk is `>=` every key in a later chunk and no chunk is
//! longer than `ceil(N / k)`. Order inside a chunk is unspecified.

use std::cmp::Ordering;

use crate::error::{FrechetError, Result};
use crate::instrument::Instrument;

/// A grid entry: a distance key and the 1-based diagram cell it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub key: f64,
    pub i: u32,
    pub j: u32,
}

impl Entry {
    pub fn new(key: f64, i: u32, j: u32) -> Self {
        Self { key, i, j }
    }
}

/// Descending comparison: `Less` means `a` belongs before `b`.
#[inline]
fn desc<I: Instrument>(a: &Entry, b: &Entry, probe: &mut I) -> Ordering {
    probe.on_compare(1);
    b.key.total_cmp(&a.key)
}

fn insertion_sort<I: Instrument>(v: &mut [Entry], probe: &mut I) {
    for k in 1..v.len() {
        let mut p = k;
        while p > 0 && desc(&v[p], &v[p - 1], probe) == Ordering::Less {
            v.swap(p, p - 1);
            p -= 1;
        }
    }
}

/// Three-way partition around `pivot`: returns `(lt, gt)` such that
/// `v[..lt] > pivot`, `v[lt..gt] == pivot`, `v[gt..] < pivot`.
fn partition3<I: Instrument>(v: &mut [Entry], pivot: f64, probe: &mut I) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, v.len());
    while i < gt {
        probe.on_compare(1);
        match pivot.total_cmp(&v[i].key) {
            Ordering::Less => {
                v.swap(lt, i);
                lt += 1;
                i += 1;
            }
            Ordering::Greater => {
                gt -= 1;
                v.swap(i, gt);
            }
            Ordering::Equal => i += 1,
        }
    }
    (lt, gt)
}

/// Median of medians of groups of five, moved to the front and selected
/// recursively. Returns its key.
fn pivot_key<I: Instrument>(v: &mut [Entry], probe: &mut I) -> f64 {
    let groups = v.len().div_ceil(5);
    for g in 0..groups {
        let lo = g * 5;
        let hi = (lo + 5).min(v.len());
        insertion_sort(&mut v[lo..hi], probe);
        v.swap(g, lo + (hi - lo) / 2);
    }
    let mid = groups / 2;
    select_index(&mut v[..groups], mid, probe);
    v[mid].key
}

/// Places the `index`-th largest element (0-based) at `index` with larger or
/// equal keys before it and smaller or equal keys after it.
fn select_index<I: Instrument>(mut v: &mut [Entry], mut index: usize, probe: &mut I) {
    loop {
        if v.len() <= 5 {
            insertion_sort(v, probe);
            return;
        }
        let pivot = pivot_key(v, probe);
        let (lt, gt) = partition3(v, pivot, probe);
        if index < lt {
            v = &mut v[..lt];
        } else if index >= gt {
            v = &mut v[gt..];
            index -= gt;
        } else {
            return;
        }
    }
}

/// Moves the `pos`-th largest entry (1-based) to position `pos` and
/// partitions the rest around it. Worst-case linear time.
pub fn select_partition(entries: &mut [Entry], pos: usize) -> Result<()> {
    select_partition_with(entries, pos, &mut ())
}

pub fn select_partition_with<I: Instrument>(
    entries: &mut [Entry],
    pos: usize,
    probe: &mut I,
) -> Result<()> {
    if pos == 0 || pos > entries.len() {
        return Err(FrechetError::PositionOutOfRange {
            pos,
            len: entries.len(),
        });
    }
    select_index(entries, pos - 1, probe);
    Ok(())
}

/// k-chunk-sorts `entries` in place and returns the exclusive end offset of
/// each chunk (ascending; the last equals `entries.len()`).
///
/// Splits at `ceil(N/2)` around the selected element, then recursively
/// `ceil(k/2)`-chunk-sorts both halves; `k = 1` leaves a slice untouched.
/// `k = 0` is treated as 1 and `k` is clamped to `N`.
pub fn chunk_sort_in_place<I: Instrument>(
    entries: &mut [Entry],
    k: usize,
    probe: &mut I,
) -> Vec<usize> {
    let len = entries.len();
    let mut bounds = Vec::new();
    if len == 0 {
        return bounds;
    }
    probe.on_chunk_sort(len as u64);
    let k = k.clamp(1, len);
    chunk_rec(entries, k, 0, &mut bounds, probe);
    bounds
}

fn chunk_rec<I: Instrument>(
    v: &mut [Entry],
    k: usize,
    offset: usize,
    bounds: &mut Vec<usize>,
    probe: &mut I,
) {
    let len = v.len();
    if k <= 1 || len <= 1 {
        bounds.push(offset + len);
        return;
    }
    let half = len.div_ceil(2);
    select_index(v, half - 1, probe);
    let sub = k.div_ceil(2);
    let (upper, lower) = v.split_at_mut(half);
    chunk_rec(upper, sub, offset, bounds, probe);
    chunk_rec(lower, sub, offset + half, bounds, probe);
}

/// An owned k-chunk-sorted array.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkPlan {
    pub entries: Vec<Entry>,
    /// Exclusive chunk end offsets.
    pub bounds: Vec<usize>,
}

impl ChunkPlan {
    pub fn chunks(&self) -> impl Iterator<Item = &[Entry]> + '_ {
        let starts = std::iter::once(0).chain(self.bounds.iter().copied());
        starts
            .zip(self.bounds.iter().copied())
            .map(|(s, e)| &self.entries[s..e])
    }

    pub fn chunk_count(&self) -> usize {
        self.bounds.len()
    }
}

pub fn chunk_sort(entries: Vec<Entry>, k: usize) -> ChunkPlan {
    chunk_sort_with(entries, k, &mut ())
}

pub fn chunk_sort_with<I: Instrument>(
    mut entries: Vec<Entry>,
    k: usize,
    probe: &mut I,
) -> ChunkPlan {
    let bounds = chunk_sort_in_place(&mut entries, k, probe);
    ChunkPlan { entries, bounds }
}

//! Operation counters threaded through the algorithms.
//!
//! Every algorithm is generic over [`Instrument`]. Plain library calls use
//! `()`, whose hooks are empty and compile away; the benchmark harness and the
//! acceptance suite pass a [`Counters`].

use serde::Serialize;

use crate::chunk_sort::Entry;

pub trait Instrument {
    #[inline(always)]
    fn on_delete(&mut self) {}
    #[inline(always)]
    fn on_test(&mut self) {}
    #[inline(always)]
    fn on_compare(&mut self, _count: u64) {}
    #[inline(always)]
    fn on_chunk_sort(&mut self, _elements: u64) {}
    /// Called when an epoch starts, with the active segment before it is
    /// chunk-sorted.
    #[inline(always)]
    fn on_epoch(&mut self, _active: &[Entry]) {}
    /// Called when an epoch ends with the number of deletions it performed.
    #[inline(always)]
    fn on_epoch_end(&mut self, _deletes: u64) {}
}

impl Instrument for () {}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub delete_calls: u64,
    pub test_calls: u64,
    pub key_comparisons: u64,
    pub epochs: u64,
    pub chunk_sort_elements: u64,
    /// Deletions performed in each epoch, in order. Empty for the
    /// single-pass algorithms.
    pub epoch_delete_calls: Vec<u64>,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl Instrument for Counters {
    #[inline]
    fn on_delete(&mut self) {
        self.delete_calls += 1;
    }

    #[inline]
    fn on_test(&mut self) {
        self.test_calls += 1;
    }

    #[inline]
    fn on_compare(&mut self, count: u64) {
        self.key_comparisons += count;
    }

    #[inline]
    fn on_chunk_sort(&mut self, elements: u64) {
        self.chunk_sort_elements += elements;
    }

    fn on_epoch(&mut self, _active: &[Entry]) {
        self.epochs += 1;
    }

    fn on_epoch_end(&mut self, deletes: u64) {
        self.epoch_delete_calls.push(deletes);
    }
}

impl<I: Instrument + ?Sized> Instrument for &mut I {
    #[inline(always)]
    fn on_delete(&mut self) {
        (**self).on_delete()
    }
    #[inline(always)]
    fn on_test(&mut self) {
        (**self).on_test()
    }
    #[inline(always)]
    fn on_compare(&mut self, count: u64) {
        (**self).on_compare(count)
    }
    #[inline(always)]
    fn on_chunk_sort(&mut self, elements: u64) {
        (**self).on_chunk_sort(elements)
    }
    fn on_epoch(&mut self, active: &[Entry]) {
        (**self).on_epoch(active)
    }
    fn on_epoch_end(&mut self, deletes: u64) {
        (**self).on_epoch_end(deletes)
    }
}

//! Enumeration caps and the worker pool used by exhaustive computations.

use std::ops::Range;

use crate::error::{Error, Result};

/// Caps on exhaustive enumerations plus the number of worker threads.
///
/// Results never depend on `workers`; it only changes how index ranges are
/// split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of vectors (or projective points) enumerated.
    pub vector_cap: u64,
    /// Largest number of subspaces streamed by a subspace enumeration.
    pub subspace_cap: u64,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vector_cap: 1 << 24,
            subspace_cap: 1_000_000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// Ranges smaller than this are not worth a thread.
const MIN_CHUNK: u64 = 1 << 12;

impl Limits {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn check_vectors(&self, what: &str, count: u128) -> Result<()> {
        if count > self.vector_cap as u128 {
            return Err(Error::cap(what, count, self.vector_cap));
        }
        Ok(())
    }

    pub fn check_subspaces(&self, what: &str, count: u128) -> Result<()> {
        if count > self.subspace_cap as u128 {
            return Err(Error::cap(what, count, self.subspace_cap));
        }
        Ok(())
    }

    /// Splits `0..total` into contiguous ranges, runs `f` on each (in
    /// parallel when worthwhile) and returns the results in range order.
    pub(crate) fn map_ranges<T, F>(&self, total: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync,
    {
        let workers = self.workers.max(1) as u64;
        if workers == 1 || total < 2 * MIN_CHUNK {
            return vec![f(0..total)];
        }
        let chunks = (workers * 4).min(total / MIN_CHUNK).max(1);
        let size = total.div_ceil(chunks);
        let ranges: Vec<Range<u64>> = (0..chunks)
            .map(|i| (i * size).min(total)..((i + 1) * size).min(total))
            .filter(|r| !r.is_empty())
            .collect();
        self.map_items(&ranges, |r| f(r.clone()))
    }

    /// Runs `f` on every item with up to `workers` threads; results come
    /// back in item order.
    pub(crate) fn map_items<I, T, F>(&self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync,
    {
        let workers = self.workers.max(1).min(items.len());
        if workers <= 1 {
            return items.iter().map(&f).collect();
        }
        let next = std::sync::atomic::AtomicUsize::new(0);
        let mut slots: Vec<Option<T>> = (0..items.len()).map(|_| None).collect();
        let done: Vec<Vec<(usize, T)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    s.spawn(|| {
                        let mut out = Vec::new();
                        loop {
                            let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            if i >= items.len() {
                                break;
                            }
                            out.push((i, f(&items[i])));
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        for (i, t) in done.into_iter().flatten() {
            slots[i] = Some(t);
        }
        slots.into_iter().map(|t| t.expect("every item ran")).collect()
    }
}

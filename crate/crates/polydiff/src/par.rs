// SPDX-License-Identifier: MIT OR Apache-2.0
//! Order-preserving parallel map over a scoped worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

/// Number of workers: the available parallelism, at most `jobs`.
pub fn workers(jobs: usize) -> usize {
    thread::available_parallelism().map_or(1, |n| n.get()).min(jobs).max(1)
}

/// Applies `f` to every item; results come back in input order.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let n = items.len();
    let queue: Vec<Mutex<Option<T>>> = items.into_iter().map(|x| Mutex::new(Some(x))).collect();
    let results: Vec<Mutex<Option<R>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..workers(n) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let item = queue[i].lock().expect("unpoisoned").take().expect("taken once");
                let r = f(item);
                *results[i].lock().expect("unpoisoned") = Some(r);
            });
        }
    });
    results.into_iter().map(|m| m.into_inner().expect("unpoisoned").expect("computed")).collect()
}

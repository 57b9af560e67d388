//! Scoped-thread fan-out for the embarrassingly parallel sweeps. The degree
//! comes from `ROCKFORGE_THREADS`, falling back to the available
//! parallelism; results are returned in input order, so output stays
//! deterministic.

use std::sync::Mutex;

pub fn thread_degree() -> usize {
    if let Ok(value) = std::env::var("ROCKFORGE_THREADS") {
        if let Ok(n) = value.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Applies `work` to every item on up to `thread_degree()` threads.
pub fn map_ordered<T, R, F>(items: Vec<T>, work: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let degree = thread_degree().min(items.len().max(1));
    if degree <= 1 {
        return items.iter().map(&work).collect();
    }
    let jobs: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let queue = Mutex::new(jobs.into_iter());
    let results = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..degree {
            scope.spawn(|| loop {
                let next = queue.lock().expect("queue lock").next();
                let Some((index, item)) = next else { break };
                let out = work(&item);
                results.lock().expect("results lock").push((index, out));
            });
        }
    });
    let mut collected = results.into_inner().expect("threads joined");
    collected.sort_by_key(|(index, _)| *index);
    collected.into_iter().map(|(_, out)| out).collect()
}

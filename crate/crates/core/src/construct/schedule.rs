//! Batch schedules: groups of rows whose facets are pairwise disjoint at
//! their recursion level, found by a greedy independent set in the facet
//! adjacency graph.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::BuildError;
use crate::polytope::basic_solutions;
use crate::system::InequalitySystem;

/// Outermost-first batches plus the rows of the innermost base case, which
/// are appended one at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub batches: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
}

impl Schedule {
    pub fn is_empty(&self) -> bool {
        self.batches.is_empty()
    }

    /// Row sets live at each batch level, outermost first: level `k` holds
    /// the core, batches `k..`, and the leftover rows.
    pub fn level_rows(&self, core: &[usize], level: usize) -> Vec<usize> {
        let mut rows: BTreeSet<usize> = core.iter().copied().collect();
        rows.extend(self.leftover.iter().copied());
        for batch in &self.batches[level..] {
            rows.extend(batch.iter().copied());
        }
        rows.into_iter().collect()
    }
}

/// Two rows define disjoint facets of the subsystem spanned by `active` iff
/// no feasible basic solution of that subsystem is tight for both. Faces of
/// a polytope always contain a vertex, so vertex enumeration decides this
/// exactly.
pub fn facets_disjoint_in(
    system: &InequalitySystem,
    active: &BTreeSet<usize>,
    i: usize,
    j: usize,
) -> Result<bool, BuildError> {
    let rows: Vec<usize> = active.iter().copied().collect();
    let sub = system.sub_system(&rows);
    let pos_i = rows.iter().position(|&r| r == i).ok_or(BuildError::UnknownRows(alloc::vec![i]))?;
    let pos_j = rows.iter().position(|&r| r == j).ok_or(BuildError::UnknownRows(alloc::vec![j]))?;
    for rec in basic_solutions(&sub)? {
        if rec.feasible && rec.tight_rows.contains(&pos_i) && rec.tight_rows.contains(&pos_j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjacency among candidate rows in the subsystem of `active` rows.
fn facet_adjacency(
    system: &InequalitySystem,
    active: &BTreeSet<usize>,
    candidates: &[usize],
) -> Result<Vec<Vec<usize>>, BuildError> {
    let rows: Vec<usize> = active.iter().copied().collect();
    let sub = system.sub_system(&rows);
    let pos: Vec<usize> = candidates
        .iter()
        .map(|&c| rows.iter().position(|&r| r == c).expect("candidate is active"))
        .collect();
    let records = basic_solutions(&sub)?;
    let mut adj = alloc::vec![Vec::new(); candidates.len()];
    for a in 0..candidates.len() {
        for b in a + 1..candidates.len() {
            let touching = records.iter().any(|rec| {
                rec.feasible
                    && rec.tight_rows.contains(&pos[a])
                    && rec.tight_rows.contains(&pos[b])
            });
            if touching {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    Ok(adj)
}

/// Greedy minimum-degree independent set; on the path graphs arising from
/// polygons this picks every second facet, and on planar graphs it returns
/// at least a sixth of the nodes.
fn greedy_independent_set(candidates: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let n = candidates.len();
    let mut alive = alloc::vec![true; n];
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut chosen = Vec::new();
    while let Some(pick) = (0..n)
        .filter(|&v| alive[v])
        .min_by_key(|&v| (degree[v], candidates[v]))
    {
        chosen.push(candidates[pick]);
        let mut removed = alloc::vec![pick];
        removed.extend(adj[pick].iter().copied().filter(|&u| alive[u]));
        for &u in &removed {
            alive[u] = false;
            for &w in &adj[u] {
                if alive[w] && degree[w] > 0 {
                    degree[w] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Shared batching loop: peel disjoint-facet batches until at most
/// `base_rows` rows remain, then leave the rest for one-at-a-time addition.
fn batch_schedule(
    system: &InequalitySystem,
    core: &[usize],
    base_rows: usize,
) -> Result<Schedule, BuildError> {
    let core_set: BTreeSet<usize> = core.iter().copied().collect();
    let mut active: BTreeSet<usize> = (0..system.m()).collect();
    let mut batches = Vec::new();
    loop {
        if active.len() <= base_rows {
            break;
        }
        let candidates: Vec<usize> = active
            .iter()
            .copied()
            .filter(|r| !core_set.contains(r))
            .collect();
        if candidates.is_empty() {
            break;
        }
        let adj = facet_adjacency(system, &active, &candidates)?;
        let batch = greedy_independent_set(&candidates, &adj);
        debug_assert!(!batch.is_empty());
        for r in &batch {
            active.remove(r);
        }
        batches.push(batch);
    }
    let leftover: Vec<usize> = active
        .iter()
        .copied()
        .filter(|r| !core_set.contains(r))
        .collect();
    Ok(Schedule { batches, leftover })
}

/// Polygon batching: alternate edges of the current polygon form a batch;
/// the recursion bottoms out at four or five rows.
pub fn batch_schedule_2d(
    system: &InequalitySystem,
    core: &[usize],
) -> Result<Schedule, BuildError> {
    if system.d() != 2 {
        return Err(BuildError::DimensionMismatch {
            expected: 2,
            got: system.d(),
        });
    }
    batch_schedule(system, core, 5)
}

/// 3-polytope batching: a greedy independent set in the facet adjacency
/// graph (the graph of the polar polytope) replaces the stable set a
/// four-coloring would give; the constant is weaker but the batches are
/// still pairwise disjoint. Bottoms out at `d + 2` rows.
pub fn batch_schedule_3d(
    system: &InequalitySystem,
    core: &[usize],
) -> Result<Schedule, BuildError> {
    if system.d() != 3 {
        return Err(BuildError::DimensionMismatch {
            expected: 3,
            got: system.d(),
        });
    }
    batch_schedule(system, core, system.d() + 2)
}

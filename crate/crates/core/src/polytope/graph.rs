//! The graph of a polytope and its path analytics.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_traits::Zero;

use super::enumerate::{basic_solutions, extreme_rays, VertexRecord};
use super::OracleError;
use crate::rational::Rational;
use crate::system::InequalitySystem;

/// Vertices (feasible records only) and edges of a bounded polytope.
#[derive(Clone, Debug)]
pub struct PolytopeGraph {
    vertices: Vec<VertexRecord>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl PolytopeGraph {
    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn find_vertex(&self, point: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|r| r.point == point)
    }

    /// Index of the strict maximizer of the given coordinate, if unique.
    pub fn unique_max_vertex(&self, coord: usize) -> Result<usize, OracleError> {
        let mut best = 0usize;
        for v in 1..self.vertices.len() {
            if self.vertices[v].point[coord] > self.vertices[best].point[coord] {
                best = v;
            }
        }
        let top_value = &self.vertices[best].point[coord];
        let tied = self
            .vertices
            .iter()
            .filter(|r| &r.point[coord] == top_value)
            .count();
        if tied != 1 {
            return Err(OracleError::TopNotUnique);
        }
        Ok(best)
    }
}

/// Builds the graph of a bounded nonempty polytope.
///
/// Two vertices are adjacent iff their common tight rows have rank `d - 1`
/// and the midpoint of the segment is feasible. The rank test alone is exact
/// for full-dimensional polytopes; the midpoint test is a cheap guard.
pub fn build_graph(system: &InequalitySystem) -> Result<PolytopeGraph, OracleError> {
    let d = system.d();
    if system.a().rank() < d {
        return Err(OracleError::Unbounded);
    }
    if !extreme_rays(system)?.is_empty() {
        return Err(OracleError::Unbounded);
    }
    let vertices: Vec<VertexRecord> = basic_solutions(system)?
        .into_iter()
        .filter(|r| r.feasible)
        .collect();
    if vertices.is_empty() {
        return Err(OracleError::Empty);
    }

    let mut edges = Vec::new();
    let mut adjacency = alloc::vec![Vec::new(); vertices.len()];
    for u in 0..vertices.len() {
        for v in u + 1..vertices.len() {
            let common: Vec<usize> = vertices[u]
                .tight_rows
                .intersection(&vertices[v].tight_rows)
                .copied()
                .collect();
            if common.len() < d - 1 || system.a().select_rows(&common).rank() != d - 1 {
                continue;
            }
            // Both endpoints are feasible, so the whole segment is feasible
            // by convexity; spot-check the midpoint in debug builds only.
            debug_assert!({
                let two = Rational::from_integer(2.into());
                let midpoint: Vec<Rational> = vertices[u]
                    .point
                    .iter()
                    .zip(&vertices[v].point)
                    .map(|(a, b)| (a + b) / &two)
                    .collect();
                system.is_feasible(&midpoint)
            });
            edges.push((u, v));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
    }
    Ok(PolytopeGraph {
        vertices,
        edges,
        adjacency,
    })
}

fn bfs_distances(graph: &PolytopeGraph, start: usize) -> Vec<Option<usize>> {
    let mut dist = alloc::vec![None; graph.vertex_count()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for &v in graph.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact graph diameter by all-pairs breadth-first search.
pub fn diameter(graph: &PolytopeGraph) -> Result<usize, OracleError> {
    let mut best = 0;
    for start in 0..graph.vertex_count() {
        for d in bfs_distances(graph, start) {
            match d {
                None => return Err(OracleError::Disconnected),
                Some(d) => best = best.max(d),
            }
        }
    }
    Ok(best)
}

/// Longest shortest strictly-increasing path to `top` along `coord`.
///
/// Edges are oriented toward the strictly larger coordinate value; edges with
/// equal values are dropped. `top` must be the unique maximizer.
pub fn z_increasing_eccentricity(
    graph: &PolytopeGraph,
    coord: usize,
    top: usize,
) -> Result<usize, OracleError> {
    let top_value = &graph.vertices()[top].point[coord];
    for (v, rec) in graph.vertices().iter().enumerate() {
        if v != top && &rec.point[coord] >= top_value {
            return Err(OracleError::TopNotUnique);
        }
    }
    // Walk backwards from the top along decreasing-coordinate edges.
    let mut dist = alloc::vec![None; graph.vertex_count()];
    dist[top] = Some(0usize);
    let mut queue = VecDeque::from([top]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for &v in graph.neighbors(u) {
            let delta = &graph.vertices()[u].point[coord] - &graph.vertices()[v].point[coord];
            if delta.is_zero() || delta < Rational::zero() {
                continue;
            }
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    let mut ecc = 0;
    for (v, d) in dist.iter().enumerate() {
        match d {
            None => return Err(OracleError::Unreachable(v)),
            Some(d) => ecc = ecc.max(*d),
        }
    }
    Ok(ecc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1])
    }

    fn square() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1])
    }

    fn pyramid_over_square() -> InequalitySystem {
        // Apex (0, 0, 1), base the square at z = 0.
        InequalitySystem::from_int_rows(
            &[
                &[1, 0, 1],
                &[-1, 0, 1],
                &[0, 1, 1],
                &[0, -1, 1],
                &[0, 0, -1],
            ],
            &[1, 1, 1, 1, 0],
        )
    }

    #[test]
    fn graph_shapes() {
        let g = build_graph(&triangle()).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (3, 3));
        let g = build_graph(&square()).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (4, 4));
        let g = build_graph(&pyramid_over_square()).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (5, 8));
    }

    #[test]
    fn graph_errors() {
        let s = InequalitySystem::from_int_rows(&[&[1]], &[1]);
        assert_eq!(build_graph(&s).unwrap_err(), OracleError::Unbounded);
        let empty = InequalitySystem::from_int_rows(&[&[1], &[-1]], &[-2, 1]);
        assert_eq!(build_graph(&empty).unwrap_err(), OracleError::Empty);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&build_graph(&triangle()).unwrap()).unwrap(), 1);
        assert_eq!(diameter(&build_graph(&square()).unwrap()).unwrap(), 2);
    }

    #[test]
    fn pyramid_eccentricity_is_one() {
        let g = build_graph(&pyramid_over_square()).unwrap();
        let top = g.unique_max_vertex(2).unwrap();
        assert_eq!(z_increasing_eccentricity(&g, 2, top).unwrap(), 1);
    }

    #[test]
    fn equal_coordinate_needs_unique_top() {
        let g = build_graph(&square()).unwrap();
        let top = g.unique_max_vertex(0);
        assert_eq!(top.unwrap_err(), OracleError::TopNotUnique);
        assert_eq!(
            z_increasing_eccentricity(&g, 0, 0).unwrap_err(),
            OracleError::TopNotUnique
        );
    }
}

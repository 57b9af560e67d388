//! The tilted prism over an extension and strictly monotone paths in it.
//!
//! The prism adds a variable `y` confined to `z/3 <= y <= 1 - z/3`, so the
//! two copies of the extension lean towards each other and the top edge
//! connects the up-path in one copy with the down-path in the other. A large
//! enough weight on `y` then makes the combined path strictly improving.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::rock::RockExtension;
use super::BuildError;
use crate::encoding::encoding_size_vec;
use crate::matrix::RationalMatrix;
use crate::polytope::{build_graph, enumerate_optimum, PolytopeGraph};
use crate::rational::{dot, norm1, pow2, rat, Rational};
use crate::system::InequalitySystem;

/// Objective sense of the public operations. Paths inside the prism always
/// climb the lifted objective; minimization negates the base objective first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct PrismExtension {
    rock: RockExtension,
    qhat: InequalitySystem,
    lower_row: usize,
    upper_row: usize,
}

impl PrismExtension {
    pub fn rock(&self) -> &RockExtension {
        &self.rock
    }

    /// The prism system over `d + 2` variables with `m + 3` rows.
    pub fn system(&self) -> &InequalitySystem {
        &self.qhat
    }

    /// Rows of the two tilted prism facets (`y >= z/3` and `y <= 1 - z/3`).
    pub fn facet_rows(&self) -> (usize, usize) {
        (self.lower_row, self.upper_row)
    }

    /// Path-length bound for any start vertex: `2(m - d + 1) + 1` in terms
    /// of the base system.
    pub fn path_bound(&self) -> usize {
        2 * (self.rock.base().m() - self.rock.base().d() + 1) + 1
    }

    /// Lifts a base vertex to the lower prism facet: `(v, 0, 0)`.
    pub fn embed_base_vertex(&self, v: &[Rational]) -> Vec<Rational> {
        let mut point = v.to_vec();
        point.push(Rational::zero());
        point.push(Rational::zero());
        point
    }
}

/// Builds the prism system from an extension. Row layout: the `m` tilted
/// base rows, the `z >= 0` row, then the lower and upper prism facets
/// (scaled to integral coefficients `z - 3y <= 0` and `z + 3y <= 3`).
pub fn crooked_prism(rock: &RockExtension) -> PrismExtension {
    let q = rock.system();
    let dq = q.d();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(q.m() + 2);
    let mut rhs = Vec::with_capacity(q.m() + 2);
    for i in 0..q.m() {
        let mut row = q.row(i).to_vec();
        row.push(Rational::zero());
        rows.push(row);
        rhs.push(q.rhs(i).clone());
    }
    let mut lower = alloc::vec![Rational::zero(); dq + 1];
    lower[dq - 1] = Rational::one();
    lower[dq] = rat(-3);
    rows.push(lower);
    rhs.push(Rational::zero());
    let mut upper = alloc::vec![Rational::zero(); dq + 1];
    upper[dq - 1] = Rational::one();
    upper[dq] = rat(3);
    rows.push(upper);
    rhs.push(rat(3));
    let qhat = InequalitySystem::new(RationalMatrix::from_rows(&rows), rhs)
        .expect("prism rows are nonzero");
    PrismExtension {
        rock: rock.clone(),
        qhat,
        lower_row: q.m(),
        upper_row: q.m() + 1,
    }
}

#[derive(Clone, Debug)]
pub struct LiftedObjective {
    /// `(sign * c, 0, c_y)` over the prism variables; paths climb this.
    pub c_hat: Vec<Rational>,
    pub c_y: Rational,
    pub certified: bool,
}

fn assemble_c_hat(c: &[Rational], sense: Sense, c_y: Rational) -> LiftedObjective {
    let sign = match sense {
        Sense::Min => rat(-1),
        Sense::Max => rat(1),
    };
    let mut c_hat: Vec<Rational> = c.iter().map(|v| v * &sign).collect();
    c_hat.push(Rational::zero());
    c_hat.push(c_y.clone());
    LiftedObjective {
        c_hat,
        c_y,
        certified: false,
    }
}

/// Weight on the prism coordinate that makes every lifted path strictly
/// increasing.
///
/// Certified mode evaluates `6 ||c||_1 2^{8<A,a,b>} + 1` on the
/// integral-scaled extension rows. Practical mode doubles a power of two
/// until the full start-vertex sweep verifies: every base vertex reaches a
/// lifted optimum by a strictly increasing path within the bound, and the
/// optimum projects onto a base optimum.
pub fn lift_objective(
    prism: &PrismExtension,
    c: &[Rational],
    sense: Sense,
    certified: bool,
) -> Result<LiftedObjective, BuildError> {
    let base = prism.rock().base();
    assert_eq!(c.len(), base.d(), "objective dimension mismatch");
    if c.iter().all(Zero::is_zero) {
        let mut lifted = assemble_c_hat(c, sense, Rational::one());
        lifted.certified = true;
        return Ok(lifted);
    }
    if certified {
        if c.iter().any(|v| !v.denom().is_one()) {
            return Err(BuildError::NotIntegral);
        }
        let q = prism.rock().system();
        let (scaled, _) = q.sub_system(&(0..base.m()).collect::<Vec<_>>()).scale_to_integrality();
        let mut size = 0u64;
        for i in 0..scaled.m() {
            size += encoding_size_vec(scaled.row(i));
            size += encoding_size_vec(core::slice::from_ref(scaled.rhs(i)));
        }
        let c_y = rat(6) * norm1(c) * Rational::from_integer(pow2(8 * size)) + Rational::one();
        let mut lifted = assemble_c_hat(c, sense, c_y);
        lifted.certified = true;
        return Ok(lifted);
    }

    let graph = build_graph(prism.system())?;
    let base_vertices = build_graph(base)?;
    let min_c = min_sense_objective(c, sense);
    let base_opt = enumerate_optimum(base, &min_c);
    let target = base_opt
        .objective
        .expect("bounded base polytope has an optimum");
    for doubling in 0..256u64 {
        let c_y = Rational::from_integer(pow2(doubling));
        let lifted = assemble_c_hat(c, sense, c_y);
        if sweep_verifies(prism, &graph, &base_vertices, &lifted, &min_c, &target) {
            return Ok(lifted);
        }
    }
    Err(BuildError::LiftSearchExhausted)
}

/// The equivalent minimization objective for the oracle.
fn min_sense_objective(c: &[Rational], sense: Sense) -> Vec<Rational> {
    match sense {
        Sense::Min => c.to_vec(),
        Sense::Max => c.iter().map(|v| -v).collect(),
    }
}

/// True when every base start vertex admits a strictly increasing path
/// within the bound whose endpoint projects onto a base optimum.
fn sweep_verifies(
    prism: &PrismExtension,
    graph: &PolytopeGraph,
    base_vertices: &PolytopeGraph,
    lifted: &LiftedObjective,
    min_c: &[Rational],
    base_optimum: &Rational,
) -> bool {
    let d = prism.rock().base().d();
    let bound = prism.path_bound();
    for rec in base_vertices.vertices() {
        let start = prism.embed_base_vertex(&rec.point);
        let Some(start_idx) = graph.find_vertex(&start) else {
            return false;
        };
        let Ok(path) = monotone_path_on_graph(graph, &lifted.c_hat, start_idx) else {
            return false;
        };
        if path.len() > bound {
            return false;
        }
        let endpoint = path.points.last().expect("path has endpoints");
        if &dot(min_c, &endpoint[..d]) != base_optimum {
            return false;
        }
    }
    true
}

/// A strictly increasing vertex path; `len()` counts edges.
#[derive(Clone, Debug)]
pub struct MonotonePath {
    pub vertex_indices: Vec<usize>,
    pub points: Vec<Vec<Rational>>,
}

impl MonotonePath {
    pub fn len(&self) -> usize {
        self.vertex_indices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_indices.len() <= 1
    }
}

/// Shortest strictly `c_hat`-increasing path from `start` to a vertex of
/// maximal `c_hat`-value, by breadth-first search over oriented edges.
pub fn monotone_path_on_graph(
    graph: &PolytopeGraph,
    c_hat: &[Rational],
    start: usize,
) -> Result<MonotonePath, BuildError> {
    let values: Vec<Rational> = graph
        .vertices()
        .iter()
        .map(|r| dot(c_hat, &r.point))
        .collect();
    let target = values.iter().max().expect("nonempty graph").clone();
    let mut parent: Vec<Option<usize>> = alloc::vec![None; graph.vertex_count()];
    let mut seen = alloc::vec![false; graph.vertex_count()];
    let mut queue = alloc::collections::VecDeque::from([start]);
    seen[start] = true;
    let mut reached = (values[start] == target).then_some(start);
    while let Some(u) = queue.pop_front() {
        if reached.is_some() {
            break;
        }
        for &v in graph.neighbors(u) {
            if seen[v] || values[v] <= values[u] {
                continue;
            }
            seen[v] = true;
            parent[v] = Some(u);
            if values[v] == target {
                reached = Some(v);
                break;
            }
            queue.push_back(v);
        }
    }
    let Some(mut at) = reached else {
        return Err(BuildError::NoMonotonePath);
    };
    let mut order = alloc::vec![at];
    while let Some(p) = parent[at] {
        order.push(p);
        at = p;
    }
    order.reverse();
    let points = order.iter().map(|&v| graph.vertices()[v].point.clone()).collect();
    Ok(MonotonePath {
        vertex_indices: order,
        points,
    })
}

/// Convenience wrapper: embeds a base vertex, builds the prism graph, and
/// searches for the strictly increasing path.
pub fn monotone_path(
    prism: &PrismExtension,
    c_hat: &[Rational],
    start_base_vertex: &[Rational],
) -> Result<MonotonePath, BuildError> {
    let graph = build_graph(prism.system())?;
    let start = prism.embed_base_vertex(start_base_vertex);
    let start_idx = graph.find_vertex(&start).ok_or(BuildError::NotAVertex)?;
    monotone_path_on_graph(&graph, c_hat, start_idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{rock_extension, Mode};
    use crate::polytope::check_simplicity;
    use crate::rational::{rat, to_rationals};

    /// Extension of the segment [-1, 1]: the pyramid with apex (0, 1).
    fn segment_rock() -> RockExtension {
        let segment = InequalitySystem::from_int_rows(&[&[1], &[-1]], &[1, 1]);
        rock_extension(&segment, &[0, 1], Mode::Practical, None).unwrap()
    }

    #[test]
    fn segment_prism_shape() {
        let prism = crooked_prism(&segment_rock());
        let qhat = prism.system();
        assert_eq!((qhat.m(), qhat.d()), (5, 3));
        let graph = build_graph(qhat).unwrap();
        assert_eq!(graph.vertex_count(), 6);
        let report = check_simplicity(qhat).unwrap();
        assert!(report.ok);
        assert!(report.redundant_rows.is_empty());
        // The two top copies are joined by an edge.
        let t0 = graph.find_vertex(&to_rationals(&[0, 1]).into_iter().chain([Rational::new(1.into(), 3.into())]).collect::<Vec<_>>()).unwrap();
        let t1 = graph.find_vertex(&to_rationals(&[0, 1]).into_iter().chain([Rational::new(2.into(), 3.into())]).collect::<Vec<_>>()).unwrap();
        assert!(graph.neighbors(t0).contains(&t1));
    }

    #[test]
    fn segment_path_climbs_through_both_copies() {
        let prism = crooked_prism(&segment_rock());
        // Maximize x over the segment; bound 2(2 - 1 + 1) + 1 = 5.
        let lifted = lift_objective(&prism, &to_rationals(&[1]), Sense::Max, false).unwrap();
        let path = monotone_path(&prism, &lifted.c_hat, &[rat(-1)]).unwrap();
        assert!(!path.is_empty() && path.len() <= prism.path_bound());
        let end = path.points.last().unwrap();
        assert_eq!(end[0], rat(1));
        // A start that is already optimal still climbs into the far copy.
        let path = monotone_path(&prism, &lifted.c_hat, &[rat(1)]).unwrap();
        assert!(!path.is_empty() && path.len() <= prism.path_bound());
        assert_eq!(path.points.last().unwrap()[0], rat(1));
    }

    #[test]
    fn canonical_up_over_down_walk_is_monotone() {
        // The walk far-vertex -> top copy 0 -> top copy 1 -> near-vertex is
        // strictly increasing under the certified lift.
        let prism = crooked_prism(&segment_rock());
        let lifted = lift_objective(&prism, &to_rationals(&[1]), Sense::Max, true).unwrap();
        let walk = [
            to_rationals(&[-1, 0, 0]),
            alloc::vec![rat(0), rat(1), Rational::new(1.into(), 3.into())],
            alloc::vec![rat(0), rat(1), Rational::new(2.into(), 3.into())],
            to_rationals(&[1, 0, 1]),
        ];
        let graph = build_graph(prism.system()).unwrap();
        let mut previous: Option<Rational> = None;
        for (step, point) in walk.iter().enumerate() {
            let here = graph.find_vertex(point);
            assert!(here.is_some(), "walk point {step} is a prism vertex");
            let value = dot(&lifted.c_hat, point);
            if let Some(prev) = previous {
                assert!(value > prev, "walk must climb at step {step}");
            }
            previous = Some(value);
        }
        assert_eq!(walk.len() - 1, 3);
    }

    #[test]
    fn zero_objective_lifts_trivially() {
        let prism = crooked_prism(&segment_rock());
        let lifted = lift_objective(&prism, &[rat(0)], Sense::Min, false).unwrap();
        assert_eq!(lifted.c_y, rat(1));
        assert_eq!(lifted.c_hat, to_rationals(&[0, 0, 1]));
        let path = monotone_path(&prism, &lifted.c_hat, &[rat(-1)]).unwrap();
        assert!(path.len() <= prism.path_bound());
    }

    #[test]
    fn practical_lift_at_most_certified() {
        let prism = crooked_prism(&segment_rock());
        let c = to_rationals(&[1]);
        let practical = lift_objective(&prism, &c, Sense::Min, false).unwrap();
        let certified = lift_objective(&prism, &c, Sense::Min, true).unwrap();
        assert!(practical.c_y <= certified.c_y);
        // The certified weight also passes the same sweep.
        let path = monotone_path(&prism, &certified.c_hat, &[rat(1)]).unwrap();
        assert_eq!(path.points.last().unwrap()[0], rat(-1));
    }
}

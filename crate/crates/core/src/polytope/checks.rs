//! Property checkers: non-degeneracy, total non-degeneracy, simplicity,
//! bounded-simplex subsystems, and concentration of extension vertices.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::enumerate::{basic_solutions, VertexRecord};
use super::graph::build_graph;
use super::OracleError;
use crate::matrix::RationalMatrix;
use crate::rational::{norm2_sq, Rational};
use crate::system::InequalitySystem;

#[derive(Clone, Debug)]
pub struct NondegeneracyReport {
    pub ok: bool,
    /// Points lying on more than `d` hyperplanes, with their tight sets.
    pub witnesses: Vec<(Vec<Rational>, Vec<usize>)>,
}

/// A system is non-degenerate when every basic-solution point, feasible or
/// not, lies on exactly `d` of the `m` hyperplanes.
pub fn check_nondegenerate(system: &InequalitySystem) -> Result<NondegeneracyReport, OracleError> {
    let d = system.d();
    let mut witnesses = Vec::new();
    for rec in basic_solutions(system)? {
        if rec.tight_rows.len() != d {
            witnesses.push((rec.point, rec.tight_rows.into_iter().collect()));
        }
    }
    Ok(NondegeneracyReport {
        ok: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Clone, Debug)]
pub enum TotalNondegeneracyWitness {
    /// A subset of at most `d` hyperplanes whose intersection is not a
    /// `(d-k)`-dimensional flat.
    DependentSubset(Vec<usize>),
    /// A subset of `d+1` hyperplanes with a common point.
    OverfullIntersection(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct TotalNondegeneracyReport {
    pub ok: bool,
    pub witnesses: Vec<TotalNondegeneracyWitness>,
}

/// Every `k <= d` hyperplanes must meet in a `(d-k)`-flat; every `d+1` must
/// have empty intersection.
pub fn check_totally_nondegenerate(system: &InequalitySystem) -> TotalNondegeneracyReport {
    let d = system.d();
    let m = system.m();
    let mut witnesses = Vec::new();
    for k in 1..=d.min(m) {
        for subset in (0..m).combinations(k) {
            let sub = system.a().select_rows(&subset);
            if sub.rank() != k {
                witnesses.push(TotalNondegeneracyWitness::DependentSubset(subset));
            }
        }
    }
    if m > d {
        for subset in (0..m).combinations(d + 1) {
            let a = system.a().select_rows(&subset);
            let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
            for (row, &i) in rows.iter_mut().zip(&subset) {
                row.push(system.b()[i].clone());
            }
            let augmented = RationalMatrix::from_rows(&rows);
            // Consistent iff augmenting with b does not raise the rank.
            if augmented.rank() == a.rank() {
                witnesses.push(TotalNondegeneracyWitness::OverfullIntersection(subset));
            }
        }
    }
    TotalNondegeneracyReport {
        ok: witnesses.is_empty(),
        witnesses,
    }
}

/// Affine dimension of a point set (rank of the difference matrix).
fn affine_dim(points: &[&Vec<Rational>]) -> Option<usize> {
    let first = points.first()?;
    if points.len() == 1 {
        return Some(0);
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(RationalMatrix::from_rows(&rows).rank())
}

/// Marks each row as irredundant iff its hyperplane carries a facet: the
/// feasible vertices tight for the row must affinely span dimension `d - 1`.
pub fn irredundant_rows(system: &InequalitySystem) -> Result<Vec<bool>, OracleError> {
    let records: Vec<VertexRecord> = basic_solutions(system)?
        .into_iter()
        .filter(|r| r.feasible)
        .collect();
    if records.is_empty() {
        return Err(OracleError::Empty);
    }
    Ok(irredundant_rows_from(system, &records))
}

/// Same, from already-enumerated feasible records.
pub fn irredundant_rows_from(system: &InequalitySystem, records: &[VertexRecord]) -> Vec<bool> {
    let d = system.d();
    let mut out = Vec::with_capacity(system.m());
    for i in 0..system.m() {
        let tight: Vec<&Vec<Rational>> = records
            .iter()
            .filter(|r| r.tight_rows.contains(&i))
            .map(|r| &r.point)
            .collect();
        out.push(affine_dim(&tight) == Some(d - 1));
    }
    out
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub ok: bool,
    pub redundant_rows: Vec<usize>,
    /// Vertices tight for more than `d` irredundant rows.
    pub witnesses: Vec<(Vec<Rational>, Vec<usize>)>,
}

/// A bounded full-dimensional polytope is simple when every vertex lies on
/// exactly `d` facets. Redundant rows are filtered out first.
pub fn check_simplicity(system: &InequalitySystem) -> Result<SimplicityReport, OracleError> {
    let graph = build_graph(system)?;
    check_simplicity_with(system, &graph)
}

/// Same, reusing an already-built graph of the system.
pub fn check_simplicity_with(
    system: &InequalitySystem,
    graph: &crate::polytope::PolytopeGraph,
) -> Result<SimplicityReport, OracleError> {
    let d = system.d();
    let all_points: Vec<&Vec<Rational>> = graph.vertices().iter().map(|r| &r.point).collect();
    if affine_dim(&all_points) != Some(d) {
        return Err(OracleError::NotFullDimensional);
    }
    let irredundant = irredundant_rows_from(system, graph.vertices());
    let redundant_rows: Vec<usize> = (0..system.m()).filter(|&i| !irredundant[i]).collect();
    let mut witnesses = Vec::new();
    for rec in graph.vertices() {
        let facet_rows: Vec<usize> = rec
            .tight_rows
            .iter()
            .copied()
            .filter(|&i| irredundant[i])
            .collect();
        if facet_rows.len() != d {
            witnesses.push((rec.point.clone(), facet_rows));
        }
    }
    Ok(SimplicityReport {
        ok: witnesses.is_empty(),
        redundant_rows,
        witnesses,
    })
}

#[derive(Clone, Debug)]
pub enum ConcentrationFailure {
    MissingNonnegativityRow,
    TopNotUnique,
    TopMismatch {
        expected: Vec<Rational>,
        found: Vec<Rational>,
    },
    VertexOutsideBall {
        point: Vec<Rational>,
        dist_sq: Rational,
    },
    BallEscapesBase {
        row: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ConcentrationReport {
    pub ok: bool,
    pub eps_sq: Rational,
    pub failures: Vec<ConcentrationFailure>,
}

/// Checks that an extension system `Ax + az <= b, z >= 0` is concentrated
/// around `(o, h)` at radius `eps`:
/// the top vertex is unique and equals `(o, h)`, every vertex with `z > 0`
/// lies strictly inside the ball of radius `eps` around `(o, h)`, and the
/// ball of radius `eps` around `o` lies strictly inside the base polytope.
/// All comparisons are on squared quantities.
pub fn check_epsilon_concentrated(
    extension: &InequalitySystem,
    o: &[Rational],
    h: &Rational,
    eps: &Rational,
) -> Result<ConcentrationReport, OracleError> {
    let dq = extension.d();
    assert_eq!(o.len() + 1, dq, "center must live in the base space");
    let z_coord = dq - 1;
    let z_row = (0..extension.m()).find(|&i| {
        let row = extension.row(i);
        row[..z_coord].iter().all(Zero::is_zero)
            && row[z_coord].is_negative()
            && extension.rhs(i).is_zero()
    });
    let Some(z_row) = z_row else {
        return Err(OracleError::NotRockShaped);
    };

    let graph = build_graph(extension)?;
    check_epsilon_concentrated_with(extension, &graph, z_row, o, h, eps)
}

/// Same, reusing an already-built graph; `z_row` names the `z >= 0` row.
pub fn check_epsilon_concentrated_with(
    extension: &InequalitySystem,
    graph: &crate::polytope::PolytopeGraph,
    z_row: usize,
    o: &[Rational],
    h: &Rational,
    eps: &Rational,
) -> Result<ConcentrationReport, OracleError> {
    let dq = extension.d();
    let z_coord = dq - 1;
    let eps_sq = eps * eps;
    let mut failures = Vec::new();
    let mut expected_top: Vec<Rational> = o.to_vec();
    expected_top.push(h.clone());
    match graph.unique_max_vertex(z_coord) {
        Err(_) => failures.push(ConcentrationFailure::TopNotUnique),
        Ok(top) => {
            let found = &graph.vertices()[top].point;
            if found != &expected_top {
                failures.push(ConcentrationFailure::TopMismatch {
                    expected: expected_top.clone(),
                    found: found.clone(),
                });
            }
        }
    }

    for rec in graph.vertices() {
        if !rec.point[z_coord].is_positive() {
            continue;
        }
        let dist_sq: Rational = rec
            .point
            .iter()
            .zip(&expected_top)
            .map(|(a, b)| {
                let diff = a - b;
                &diff * &diff
            })
            .sum();
        if dist_sq >= eps_sq {
            failures.push(ConcentrationFailure::VertexOutsideBall {
                point: rec.point.clone(),
                dist_sq,
            });
        }
    }

    for i in 0..extension.m() {
        if i == z_row {
            continue;
        }
        let base_row = &extension.row(i)[..z_coord];
        let margin = extension.rhs(i) - crate::rational::dot(base_row, o);
        let ok = margin.is_positive() && &margin * &margin > &eps_sq * norm2_sq(base_row);
        if !ok {
            failures.push(ConcentrationFailure::BallEscapesBase { row: i });
        }
    }

    Ok(ConcentrationReport {
        ok: failures.is_empty(),
        eps_sq,
        failures,
    })
}

/// Searches for `d + 1` rows whose subsystem is a bounded full-dimensional
/// simplex. Returns the lexicographically first such index set.
///
/// Boundedness is decided exactly: for each chosen row, the negated normal
/// must be a strictly positive combination of the other `d` normals, which
/// makes every extreme ray of each corner cone hit the remaining hyperplane.
/// The corners are then checked to be distinct and feasible.
pub fn find_simplex_subsystem(system: &InequalitySystem) -> Option<Vec<usize>> {
    let d = system.d();
    let m = system.m();
    if m < d + 1 {
        return None;
    }
    'subset: for subset in (0..m).combinations(d + 1) {
        for (k, &i) in subset.iter().enumerate() {
            let others: Vec<usize> = subset
                .iter()
                .enumerate()
                .filter_map(|(j, &r)| (j != k).then_some(r))
                .collect();
            let basis_t = system.a().select_rows(&others).transpose();
            let neg_normal: Vec<Rational> = system.row(i).iter().map(|v| -v).collect();
            let Ok(lambda) = basis_t.solve_vec(&neg_normal) else {
                continue 'subset;
            };
            if !lambda.iter().all(Signed::is_positive) {
                continue 'subset;
            }
        }
        let sub = system.sub_system(&subset);
        let mut corners: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for k in 0..subset.len() {
            let rows: Vec<usize> = (0..subset.len()).filter(|&j| j != k).collect();
            let a = sub.a().select_rows(&rows);
            let rhs: Vec<Rational> = rows.iter().map(|&j| sub.b()[j].clone()).collect();
            let Ok(corner) = a.solve_vec(&rhs) else {
                continue 'subset;
            };
            if !sub.is_feasible(&corner) {
                continue 'subset;
            }
            corners.insert(corner);
        }
        if corners.len() == d + 1 {
            return Some(subset);
        }
    }
    None
}

//! Brute-force polytope oracle: vertex enumeration, the polytope graph,
//! property checkers, and exact geometry statistics.
//!
//! Everything here enumerates row subsets, so it is meant for desk-scale
//! inputs. It is deliberately independent of the simplex solver and serves
//! as the ground truth the constructions are verified against.

mod checks;
mod enumerate;
mod graph;
mod optimum;
mod stats;

pub use checks::{
    check_epsilon_concentrated, check_epsilon_concentrated_with, check_nondegenerate,
    check_simplicity, check_simplicity_with, check_totally_nondegenerate, find_simplex_subsystem,
    irredundant_rows, irredundant_rows_from, ConcentrationFailure, ConcentrationReport,
    NondegeneracyReport, SimplicityReport, TotalNondegeneracyReport,
};
pub use enumerate::{basic_solutions, extreme_rays, is_bounded, VertexRecord};
pub use graph::{build_graph, diameter, z_increasing_eccentricity, PolytopeGraph};
pub use optimum::enumerate_optimum;
pub use stats::{geometry_stats, GeometryStats};

use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    RankDeficient,
    Unbounded,
    Empty,
    NotFullDimensional,
    Disconnected,
    TopNotUnique,
    Unreachable(usize),
    NotRockShaped,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::RankDeficient => write!(f, "coefficient matrix has rank below d"),
            OracleError::Unbounded => write!(f, "polyhedron is unbounded"),
            OracleError::Empty => write!(f, "polyhedron is empty"),
            OracleError::NotFullDimensional => write!(f, "polytope is not full-dimensional"),
            OracleError::Disconnected => write!(f, "polytope graph is disconnected"),
            OracleError::TopNotUnique => write!(f, "top vertex is not the unique maximizer"),
            OracleError::Unreachable(v) => {
                write!(f, "vertex {v} has no strictly increasing path to the top")
            }
            OracleError::NotRockShaped => {
                write!(f, "system lacks the trailing `z >= 0` row of an extension")
            }
        }
    }
}

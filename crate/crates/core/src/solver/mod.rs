//! Exact-rational simplex over row bases, the feasibility phase with its
//! explicit start vertex, and the reduction of general linear programs to
//! runs over bounded non-degenerate systems.

mod phase1;
mod pipeline;
mod simplex;
mod walk;

pub use phase1::{phase_one, PhaseOneResult};
pub use pipeline::{interpret_alpha_basis, solve_lp, AlphaVerdict, LpForm, PipelineTrace, SolveConfig, Via};
pub use simplex::{simplex_solve, simplex_solve_traced, PivotRule, StrongInput};
pub use walk::{walk_rock, WalkReport};

use core::fmt;

use crate::construct::BuildError;
use crate::matrix::MatrixError;
use crate::perturb::PerturbError;
use crate::polytope::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverError {
    NotAVertex,
    CycleDetected,
    StartInfeasible,
    NotSimpleAtVertex,
    CertifiedTooLarge { rows_plus_dim: usize },
    Matrix(MatrixError),
    Oracle(OracleError),
    Build(BuildError),
    Perturb(PerturbError),
    Internal(&'static str),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::NotAVertex => write!(f, "start basis does not define a feasible vertex"),
            SolverError::CycleDetected => write!(f, "basis revisited; input violates the non-degeneracy contract"),
            SolverError::StartInfeasible => {
                write!(f, "constructed feasibility-phase start is not a vertex")
            }
            SolverError::NotSimpleAtVertex => {
                write!(f, "optimal vertex lies on more than d hyperplanes")
            }
            SolverError::CertifiedTooLarge { rows_plus_dim } => write!(
                f,
                "certified mode is limited to m + d <= 8, got {rows_plus_dim}"
            ),
            SolverError::Matrix(e) => write!(f, "{e}"),
            SolverError::Oracle(e) => write!(f, "{e}"),
            SolverError::Build(e) => write!(f, "{e}"),
            SolverError::Perturb(e) => write!(f, "{e}"),
            SolverError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl From<MatrixError> for SolverError {
    fn from(e: MatrixError) -> Self {
        SolverError::Matrix(e)
    }
}

impl From<OracleError> for SolverError {
    fn from(e: OracleError) -> Self {
        SolverError::Oracle(e)
    }
}

impl From<BuildError> for SolverError {
    fn from(e: BuildError) -> Self {
        SolverError::Build(e)
    }
}

impl From<PerturbError> for SolverError {
    fn from(e: PerturbError) -> Self {
        SolverError::Perturb(e)
    }
}

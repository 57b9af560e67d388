//! Solve outcomes shared by the brute-force oracle and the simplex solver.

use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Result of minimizing `c^T x` over `Ax <= b`.
///
/// `Optimal` carries an exact vertex, its basis, and the objective value.
/// `Unbounded` carries an improving recession direction `r` with `A r <= 0`
/// and `c^T r < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub basis: Option<Vec<usize>>,
    pub vertex: Option<Vec<Rational>>,
    pub objective: Option<Rational>,
    pub steps: u64,
    pub ray: Option<Vec<Rational>>,
}

impl SolveOutcome {
    pub fn infeasible(steps: u64) -> Self {
        Self {
            status: SolveStatus::Infeasible,
            basis: None,
            vertex: None,
            objective: None,
            steps,
            ray: None,
        }
    }

    pub fn unbounded(ray: Vec<Rational>, steps: u64) -> Self {
        Self {
            status: SolveStatus::Unbounded,
            basis: None,
            vertex: None,
            objective: None,
            steps,
            ray: Some(ray),
        }
    }

    pub fn optimal(
        basis: Vec<usize>,
        vertex: Vec<Rational>,
        objective: Rational,
        steps: u64,
    ) -> Self {
        Self {
            status: SolveStatus::Optimal,
            basis: Some(basis),
            vertex: Some(vertex),
            objective: Some(objective),
            steps,
            ray: None,
        }
    }
}

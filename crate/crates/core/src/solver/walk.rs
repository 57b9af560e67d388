//! Measurement harness: pivot-rule walks over prism extensions.

use alloc::vec::Vec;

use super::simplex::{simplex_solve_traced, PivotRule, StrongInput};
use super::SolverError;
use crate::construct::{LiftedObjective, PrismExtension};
use crate::outcome::SolveStatus;
use crate::polytope::enumerate_optimum;
use crate::rational::{dot, Rational};

/// One recorded walk: the exact pivot count, the visited vertices, and how
/// the count compares to the existence bound (rules may exceed it; that is
/// data, not an error).
#[derive(Clone, Debug)]
pub struct WalkReport {
    pub steps: u64,
    pub path: Vec<Vec<Rational>>,
    pub bound: usize,
    pub within_bound: bool,
    pub endpoint: Vec<Rational>,
    pub endpoint_is_base_optimal: bool,
}

/// Runs the simplex over the prism from the lifted start vertex, maximizing
/// the lifted objective, and cross-checks the endpoint projection against
/// the enumeration oracle for the base objective (minimization sense).
pub fn walk_rock(
    prism: &PrismExtension,
    lifted: &LiftedObjective,
    base_objective: &[Rational],
    start_base_vertex: &[Rational],
    rule: PivotRule,
) -> Result<WalkReport, SolverError> {
    let base = prism.rock().base();
    assert_eq!(base_objective.len(), base.d(), "objective dimension mismatch");
    let embedded = prism.embed_base_vertex(start_base_vertex);
    let tight = prism.system().tight_rows(&embedded);
    let basis = super::phase1::first_nonsingular_rows(prism.system(), &tight)
        .ok_or(SolverError::NotAVertex)?;
    let input = StrongInput::new(prism.system().clone(), basis)?;
    let minus_c_hat: Vec<Rational> = lifted.c_hat.iter().map(|v| -v).collect();
    let (outcome, path) = simplex_solve_traced(&input, &minus_c_hat, rule)?;
    if outcome.status != SolveStatus::Optimal {
        return Err(SolverError::Internal("prism walks terminate at an optimum"));
    }
    let endpoint = outcome.vertex.expect("optimal outcome");
    let oracle = enumerate_optimum(base, base_objective);
    let endpoint_is_base_optimal = oracle
        .objective
        .map(|best| dot(base_objective, &endpoint[..base.d()]) == best)
        .unwrap_or(false);
    let bound = prism.path_bound();
    Ok(WalkReport {
        steps: outcome.steps,
        within_bound: outcome.steps as usize <= bound,
        bound,
        endpoint,
        endpoint_is_base_optimal,
        path,
    })
}

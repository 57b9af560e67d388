//! Feasibility phase over the slack-relaxed system, with its closed-form
//! start vertex.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::simplex::{simplex_solve, PivotRule, StrongInput};
use super::SolverError;
use crate::matrix::RationalMatrix;
use crate::outcome::{SolveOutcome, SolveStatus};
use crate::perturb::{PerturbedSystem, SplitSystem};
use crate::rational::{dot, Rational};
use crate::system::InequalitySystem;

/// Outcome of the feasibility phase.
#[derive(Clone, Debug)]
pub struct PhaseOneResult {
    /// The auxiliary solve over `(x, s)`.
    pub outcome: SolveOutcome,
    /// On a zero optimum: a vertex of the perturbed system and its basis
    /// (row indices of the perturbed split system).
    pub feasible: Option<(Vec<Rational>, Vec<usize>)>,
}

/// Minimizes `1^T s` over `{Ax - s <= b', -x <= o', s >= 0}` where `b'`,
/// `o'` are the perturbed right-hand sides. The start sets every `x_j` to
/// its perturbed lower bound and every slack to the exact violation there;
/// for each general row, exactly one of the row itself and its slack bound
/// is tight, which makes the start a vertex with a known basis.
pub fn phase_one(
    split: &SplitSystem,
    perturbation: &PerturbedSystem,
) -> Result<PhaseOneResult, SolverError> {
    let d = split.d();
    let m = split.general_rows();
    let pert = perturbation.perturbed();
    assert_eq!(pert.m(), m + d, "perturbation must cover the split system");

    // Auxiliary system over (x, s): m relaxed rows, d lower bounds, m slack
    // bounds.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(2 * m + d);
    let mut rhs: Vec<Rational> = Vec::with_capacity(2 * m + d);
    for i in 0..m {
        let mut row = alloc::vec![Rational::zero(); d + m];
        row[..d].clone_from_slice(split.system().row(i));
        row[d + i] = -Rational::one();
        rows.push(row);
        rhs.push(pert.rhs(i).clone());
    }
    for j in 0..d {
        let mut row = alloc::vec![Rational::zero(); d + m];
        row[j] = -Rational::one();
        rows.push(row);
        rhs.push(pert.rhs(m + j).clone());
    }
    for i in 0..m {
        let mut row = alloc::vec![Rational::zero(); d + m];
        row[d + i] = -Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let aux = InequalitySystem::new(RationalMatrix::from_rows(&rows), rhs)
        .expect("auxiliary rows are nonzero");

    // Start vertex: x at its perturbed lower bounds, slacks at the exact
    // violations.
    let x_start: Vec<Rational> = (0..d).map(|j| -pert.rhs(m + j)).collect();
    let mut start = x_start.clone();
    let mut basis: Vec<usize> = Vec::with_capacity(m + d);
    for i in 0..m {
        let violation = dot(split.system().row(i), &x_start) - pert.rhs(i);
        if violation.is_positive() {
            start.push(violation);
            basis.push(i);
        } else {
            start.push(Rational::zero());
            basis.push(m + d + i);
        }
    }
    basis.extend(m..m + d);
    basis.sort_unstable();

    let input =
        StrongInput::new(aux, basis).map_err(|_| SolverError::StartInfeasible)?;
    if input.start_vertex() != start.as_slice() {
        return Err(SolverError::StartInfeasible);
    }

    let mut objective = alloc::vec![Rational::zero(); d + m];
    for coeff in objective.iter_mut().skip(d) {
        *coeff = Rational::one();
    }
    let outcome = simplex_solve(&input, &objective, PivotRule::Bland)?;
    if outcome.status != SolveStatus::Optimal {
        return Err(SolverError::Internal("feasibility phase cannot be unbounded"));
    }
    let value = outcome.objective.clone().expect("optimal outcome");
    if value.is_positive() {
        return Ok(PhaseOneResult {
            outcome,
            feasible: None,
        });
    }

    let vertex = outcome.vertex.clone().expect("optimal outcome");
    let x_star: Vec<Rational> = vertex[..d].to_vec();
    let tight = pert.tight_rows(&x_star);
    let basis = first_nonsingular_rows(pert, &tight)
        .ok_or(SolverError::Internal("feasible point is not a vertex"))?;
    Ok(PhaseOneResult {
        outcome,
        feasible: Some((x_star, basis)),
    })
}

/// First (lexicographic) `d`-subset of the given rows that forms a basis.
pub(crate) fn first_nonsingular_rows(system: &InequalitySystem, rows: &[usize]) -> Option<Vec<usize>> {
    use itertools::Itertools;
    let d = system.d();
    rows.iter()
        .copied()
        .combinations(d)
        .find(|subset| {
            system
                .a()
                .select_rows(subset)
                .det()
                .is_ok_and(|det| !det.is_zero())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::{epsilon_bound, perturb_with_nonneg, Provenance};
    use crate::rational::{rat, to_rationals};

    fn split_and_perturb(
        rows: &[&[i64]],
        rhs: &[i64],
        c: &[i64],
    ) -> (SplitSystem, PerturbedSystem) {
        let general = InequalitySystem::from_int_rows(rows, rhs);
        let split = SplitSystem::from_general(&general);
        let eps = epsilon_bound(split.system(), &to_rationals(c));
        let pert = perturb_with_nonneg(&split, &eps, Provenance::CertifiedFormula);
        (split, pert)
    }

    #[test]
    fn feasible_interval() {
        let (split, pert) = split_and_perturb(&[&[1]], &[1], &[1]);
        let result = phase_one(&split, &pert).unwrap();
        assert_eq!(result.outcome.objective, Some(rat(0)));
        assert_eq!(result.outcome.steps, 0);
        let (x_star, basis) = result.feasible.unwrap();
        // The start x = -eps^2 is already a vertex of the perturbed system.
        assert_eq!(x_star, alloc::vec![-pert.perturbed().rhs(1).clone()]);
        assert_eq!(basis, alloc::vec![1]);
    }

    #[test]
    fn infeasible_detected() {
        let (split, pert) = split_and_perturb(&[&[1]], &[-1], &[1]);
        let result = phase_one(&split, &pert).unwrap();
        assert!(result.feasible.is_none());
        assert!(result.outcome.objective.unwrap().is_positive());
    }

    #[test]
    fn start_basis_defines_start_vertex() {
        // Two general rows, one violated at the lower-bound corner.
        let (split, pert) = split_and_perturb(&[&[1, 1], &[-1, -1]], &[2, -1], &[1, 0]);
        let result = phase_one(&split, &pert).unwrap();
        let (x_star, _) = result.feasible.expect("feasible system");
        assert!(pert.perturbed().is_feasible(&x_star));
    }
}

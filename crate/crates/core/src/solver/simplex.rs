//! Vertex-following simplex on inequality-form row bases.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SolverError;
use crate::outcome::SolveOutcome;
use crate::polytope::{check_nondegenerate, is_bounded};
use crate::rational::{dot, Rational};
use crate::system::InequalitySystem;

/// Leaving-row selection. Bland picks the lowest improving row index and
/// never cycles; Dantzig picks the most negative multiplier; the seeded
/// random rule draws uniformly among improving rows. Ratio-test ties always
/// break to the lowest row index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    Bland,
    Dantzig,
    Random(u64),
}

/// A bounded non-degenerate system together with one feasible basis.
///
/// `new` verifies only that the basis describes a feasible vertex;
/// `new_verified` additionally runs the oracle checks for boundedness and
/// non-degeneracy (desk scale only).
#[derive(Clone, Debug)]
pub struct StrongInput {
    system: InequalitySystem,
    start_basis: Vec<usize>,
    start_vertex: Vec<Rational>,
}

impl StrongInput {
    pub fn new(system: InequalitySystem, basis_rows: Vec<usize>) -> Result<Self, SolverError> {
        let mut basis_rows = basis_rows;
        basis_rows.sort_unstable();
        basis_rows.dedup();
        if basis_rows.len() != system.d() || basis_rows.iter().any(|&i| i >= system.m()) {
            return Err(SolverError::NotAVertex);
        }
        let sub = system.a().select_rows(&basis_rows);
        let rhs: Vec<Rational> = basis_rows.iter().map(|&i| system.b()[i].clone()).collect();
        let start_vertex = sub.solve_vec(&rhs).map_err(|_| SolverError::NotAVertex)?;
        if !system.is_feasible(&start_vertex) {
            return Err(SolverError::NotAVertex);
        }
        Ok(Self {
            system,
            start_basis: basis_rows,
            start_vertex,
        })
    }

    pub fn new_verified(system: InequalitySystem, basis_rows: Vec<usize>) -> Result<Self, SolverError> {
        if !is_bounded(&system)? {
            return Err(SolverError::Oracle(crate::polytope::OracleError::Unbounded));
        }
        if !check_nondegenerate(&system)?.ok {
            return Err(SolverError::Internal("strong input must be non-degenerate"));
        }
        Self::new(system, basis_rows)
    }

    pub fn system(&self) -> &InequalitySystem {
        &self.system
    }

    pub fn start_basis(&self) -> &[usize] {
        &self.start_basis
    }

    pub fn start_vertex(&self) -> &[Rational] {
        &self.start_vertex
    }
}

struct PivotState {
    rng: Option<ChaCha8Rng>,
}

impl PivotState {
    fn new(rule: PivotRule) -> Self {
        let rng = match rule {
            PivotRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Self { rng }
    }

    /// Position (within the basis) of the row to relax.
    fn choose(&mut self, rule: PivotRule, basis: &[usize], y: &[Rational]) -> Option<usize> {
        let improving: Vec<usize> = (0..basis.len()).filter(|&k| y[k].is_negative()).collect();
        if improving.is_empty() {
            return None;
        }
        Some(match rule {
            PivotRule::Bland => improving
                .iter()
                .copied()
                .min_by_key(|&k| basis[k])
                .expect("nonempty"),
            PivotRule::Dantzig => improving
                .iter()
                .copied()
                .min_by(|&a, &b| y[a].cmp(&y[b]).then(basis[a].cmp(&basis[b])))
                .expect("nonempty"),
            PivotRule::Random(_) => {
                let rng = self.rng.as_mut().expect("seeded rule has a generator");
                improving[rng.gen_range(0..improving.len())]
            }
        })
    }
}

/// Minimizes `c^T x` from the given strong input.
///
/// At basis `U` the multipliers solve `A_U^T y = -c`; all-nonnegative `y`
/// certifies optimality, otherwise relaxing a row with `y_k < 0` yields the
/// improving edge direction `r` with `A_U r = -e_k`, and the exact ratio
/// test picks the entering row. Every basis exchange counts as one step. A
/// visited-basis guard turns contract violations into `CycleDetected`
/// instead of hangs.
pub fn simplex_solve(
    input: &StrongInput,
    c: &[Rational],
    rule: PivotRule,
) -> Result<SolveOutcome, SolverError> {
    simplex_solve_traced(input, c, rule).map(|(outcome, _)| outcome)
}

/// Same as [`simplex_solve`] but also returns the visited vertex sequence.
pub fn simplex_solve_traced(
    input: &StrongInput,
    c: &[Rational],
    rule: PivotRule,
) -> Result<(SolveOutcome, Vec<Vec<Rational>>), SolverError> {
    let system = input.system();
    assert_eq!(c.len(), system.d(), "objective dimension mismatch");
    let neg_c: Vec<Rational> = c.iter().map(|v| -v).collect();
    let mut basis = input.start_basis().to_vec();
    let mut x = input.start_vertex().to_vec();
    let mut steps = 0u64;
    let mut visited: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut state = PivotState::new(rule);
    visited.insert(basis.clone());
    let mut path = alloc::vec![x.clone()];

    loop {
        let sub = system.a().select_rows(&basis);
        let y = sub.transpose().solve_vec(&neg_c)?;
        let Some(leave_pos) = state.choose(rule, &basis, &y) else {
            let objective = dot(c, &x);
            return Ok((SolveOutcome::optimal(basis, x, objective, steps), path));
        };
        let mut e_k = alloc::vec![Rational::zero(); system.d()];
        e_k[leave_pos] = -Rational::from_integer(1.into());
        let direction = sub.solve_vec(&e_k)?;
        debug_assert!(dot(c, &direction).is_negative());

        let mut best: Option<(Rational, usize)> = None;
        for i in 0..system.m() {
            if basis.binary_search(&i).is_ok() {
                continue;
            }
            let speed = dot(system.row(i), &direction);
            if !speed.is_positive() {
                continue;
            }
            let t = (system.rhs(i) - dot(system.row(i), &x)) / speed;
            let better = match &best {
                None => true,
                Some((t_best, _)) => &t < t_best,
            };
            if better {
                best = Some((t, i));
            }
        }
        let Some((t, enter)) = best else {
            debug_assert!(system
                .a()
                .mul_vec(&direction)
                .iter()
                .all(|v| !v.is_positive()));
            return Ok((SolveOutcome::unbounded(direction, steps), path));
        };
        for (coord, dir) in x.iter_mut().zip(&direction) {
            *coord += &t * dir;
        }
        let leaving_row = basis[leave_pos];
        basis.retain(|&r| r != leaving_row);
        let insert_at = basis.partition_point(|&r| r < enter);
        basis.insert(insert_at, enter);
        steps += 1;
        path.push(x.clone());
        if !visited.insert(basis.clone()) {
            return Err(SolverError::CycleDetected);
        }
    }
}

//! Brute-force linear optimization over a pointed system, by full enumeration.

use alloc::vec::Vec;

use num_traits::Signed;

use super::enumerate::{basic_solutions, extreme_rays};
use crate::outcome::SolveOutcome;
use crate::rational::{dot, Rational};
use crate::system::InequalitySystem;

/// Minimizes `c^T x` over `Ax <= b` by enumerating vertices and extreme rays.
///
/// This is the oracle everything else is validated against; it shares no code
/// path with the simplex solver. The system must be pointed (`rank(A) = d`).
pub fn enumerate_optimum(system: &InequalitySystem, c: &[Rational]) -> SolveOutcome {
    assert_eq!(c.len(), system.d(), "objective dimension mismatch");
    let records = basic_solutions(system)
        .expect("enumeration oracle requires a pointed system");
    let feasible: Vec<_> = records.into_iter().filter(|r| r.feasible).collect();
    if feasible.is_empty() {
        return SolveOutcome::infeasible(0);
    }
    let rays = extreme_rays(system).expect("rank verified above");
    if let Some(ray) = rays.into_iter().find(|r| dot(c, r).is_negative()) {
        return SolveOutcome::unbounded(ray, 0);
    }
    let best = feasible
        .iter()
        .min_by(|u, v| dot(c, &u.point).cmp(&dot(c, &v.point)))
        .expect("nonempty");
    SolveOutcome::optimal(
        best.defining_bases[0].clone(),
        best.point.clone(),
        dot(c, &best.point),
        0,
    )
}

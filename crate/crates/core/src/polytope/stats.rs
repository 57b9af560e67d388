//! Exact bounds on the two distance constants of a system relative to a point.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::enumerate::basic_solutions;
use super::OracleError;
use crate::rational::{rat_ceil_sqrt, Rational};
use crate::system::InequalitySystem;

/// Rational stand-ins for the two Euclidean distance constants.
///
/// `delta1_sq_max` is the exact maximum squared distance from a basic
/// solution (feasible or not) to the reference point; `delta1_ub` is the
/// smallest integer dominating its square root. `delta2_lb` under-approximates
/// the minimum distance from a basic solution to a non-containing hyperplane
/// through an integer ceiling square root of the row norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryStats {
    pub delta1_sq_max: Rational,
    pub delta1_ub: Rational,
    pub delta2_lb: Rational,
}

pub fn geometry_stats(
    system: &InequalitySystem,
    o: &[Rational],
) -> Result<GeometryStats, OracleError> {
    assert_eq!(o.len(), system.d(), "reference point dimension mismatch");
    let records = basic_solutions(system)?;
    let mut delta1_sq_max = Rational::zero();
    let mut delta2_lb: Option<Rational> = None;
    let row_norm_ub: Vec<Rational> = (0..system.m())
        .map(|i| Rational::from_integer(rat_ceil_sqrt(&system.row_norm2_sq(i))))
        .collect();
    for rec in &records {
        let dist_sq: Rational = rec
            .point
            .iter()
            .zip(o)
            .map(|(a, b)| {
                let diff = a - b;
                &diff * &diff
            })
            .sum();
        if dist_sq > delta1_sq_max {
            delta1_sq_max = dist_sq;
        }
        for (i, norm_ub) in row_norm_ub.iter().enumerate() {
            let gap = system.slack(i, &rec.point).abs();
            if gap.is_zero() {
                continue;
            }
            let bound = gap / norm_ub;
            if delta2_lb.as_ref().is_none_or(|cur| &bound < cur) {
                delta2_lb = Some(bound);
            }
        }
    }
    let delta1_ub = Rational::from_integer(rat_ceil_sqrt(&delta1_sq_max));
    Ok(GeometryStats {
        delta1_sq_max,
        delta1_ub,
        // No (point, hyperplane) pair at positive distance means the true
        // minimum is over an empty set; any positive value is then a sound
        // lower bound.
        delta2_lb: delta2_lb.unwrap_or_else(|| Rational::from_integer(1.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn square() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1])
    }

    #[test]
    fn square_stats_at_origin() {
        let stats = geometry_stats(&square(), &[rat(0), rat(0)]).unwrap();
        assert_eq!(stats.delta1_sq_max, rat(2));
        assert_eq!(stats.delta1_ub, rat(2));
        assert_eq!(stats.delta2_lb, rat(2));
    }

    #[test]
    fn triangle_stats_at_interior_point() {
        let triangle =
            InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1]);
        let stats = geometry_stats(&triangle, &[ratio(1, 4), ratio(1, 4)]).unwrap();
        assert_eq!(stats.delta1_sq_max, ratio(10, 16));
        assert_eq!(stats.delta1_ub, rat(1));
    }

    #[test]
    fn point_at_basic_solution_still_counts_rows() {
        let stats = geometry_stats(&square(), &[rat(1), rat(1)]).unwrap();
        // The corner itself contributes zero to delta1 but delta2 still sees
        // its distance to the opposite sides.
        assert_eq!(stats.delta1_sq_max, rat(8));
        assert_eq!(stats.delta2_lb, rat(2));
    }

    #[test]
    fn delta2_under_approximates_true_distances() {
        let s = InequalitySystem::from_int_rows(&[&[1, 1], &[1, -1], &[-1, 0]], &[2, 0, 0]);
        let stats = geometry_stats(&s, &[rat(0), rat(0)]).unwrap();
        for rec in basic_solutions(&s).unwrap() {
            for i in 0..s.m() {
                let gap = s.slack(i, &rec.point).abs();
                if gap.is_zero() {
                    continue;
                }
                // exact squared distance >= delta2_lb^2
                let dist_sq = &gap * &gap / s.row_norm2_sq(i);
                assert!(dist_sq >= &stats.delta2_lb * &stats.delta2_lb);
            }
        }
    }
}

//! Interior points near a vertex, the bounding box row, and recentering.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::params::Mode;
use super::BuildError;
use crate::encoding::EncodingStats;
use crate::polytope::{basic_solutions, check_nondegenerate, geometry_stats};
use crate::rational::{dot, norm1, Rational};
use crate::system::{Basis, InequalitySystem};

fn feasible_vertex(
    system: &InequalitySystem,
    basis: &Basis,
) -> Result<Vec<Rational>, BuildError> {
    let point = basis
        .basic_solution(system)
        .map_err(|_| BuildError::NotAVertex)?;
    if !system.is_feasible(&point) {
        return Err(BuildError::NotAVertex);
    }
    Ok(point)
}

/// Sum of the inward edge directions at the vertex of `basis`.
///
/// The feasible cone at `x^U` is `{x^U - A_U^{ -1} t : t >= 0}`, so the
/// inward ray sum is `-(A_U)^{-1} * 1`, not its negation. Strict interiority
/// of the result is always verified exactly.
fn inward_ray_sum(system: &InequalitySystem, basis: &Basis) -> Result<Vec<Rational>, BuildError> {
    let sub = system.a().select_rows(basis.indices());
    let ones = alloc::vec![Rational::one(); system.d()];
    let raw = sub.solve_vec(&ones).map_err(|_| BuildError::NotAVertex)?;
    Ok(raw.into_iter().map(|v| -v).collect())
}

/// A strictly interior point obtained by stepping from the vertex of `basis`
/// along the inward ray sum.
///
/// The step length is half the certified lower bound on the minimum
/// vertex-to-hyperplane distance in certified mode, and half the exact
/// oracle-computed bound in practical mode; either way the step cannot cross
/// a non-tight hyperplane.
pub fn interior_point(
    system: &InequalitySystem,
    basis: &Basis,
    mode: Mode,
) -> Result<Vec<Rational>, BuildError> {
    if !system.is_integral() {
        return Err(BuildError::NotIntegral);
    }
    let vertex = feasible_vertex(system, basis)?;
    let s = inward_ray_sum(system, basis)?;
    let lambda = match mode {
        Mode::Certified => {
            let stats = EncodingStats::of_system(system);
            let d = Rational::from_integer(system.d().into());
            (stats.two_pow_times_rat(2) * d * stats.delta1()).recip()
                / Rational::from_integer(2.into())
        }
        Mode::Practical => {
            let stats = geometry_stats(system, &vertex)?;
            stats.delta2_lb / Rational::from_integer(2.into())
        }
    };
    let scale = lambda / norm1(&s);
    let point: Vec<Rational> = vertex
        .iter()
        .zip(&s)
        .map(|(x, dir)| x + &scale * dir)
        .collect();
    if !system.is_strictly_feasible(&point) {
        return Err(BuildError::NotInterior);
    }
    Ok(point)
}

#[derive(Clone, Debug)]
pub struct BoxRow {
    pub alpha: Vec<Rational>,
    pub beta: Rational,
    pub augmented: InequalitySystem,
    pub retries: usize,
}

/// Appends one redundant inequality that makes the system simplex-containing.
///
/// The normal is the negated column sum of the basis rows, so every extreme
/// ray `r_k` of the vertex cone has `alpha * r_k = 1` and the truncation at
/// the vertex is always a simplex. The offset strictly dominates every basic
/// solution (verified by enumeration) and is bumped by one until the
/// augmented system is non-degenerate.
pub fn box_inequality(
    system: &InequalitySystem,
    basis: &Basis,
) -> Result<BoxRow, BuildError> {
    if !system.is_integral() {
        return Err(BuildError::NotIntegral);
    }
    feasible_vertex(system, basis)?;
    let sub = system.a().select_rows(basis.indices());
    let d = system.d();
    let alpha: Vec<Rational> = (0..d)
        .map(|c| -(0..d).map(|r| sub.get(r, c)).sum::<Rational>())
        .collect();

    let stats = EncodingStats::of_system(system);
    let d_rat = Rational::from_integer(d.into());
    let beta_base =
        &d_rat * &d_rat * stats.delta1() * stats.two_pow_times_rat(2) + Rational::one();

    let max_alpha_value = basic_solutions(system)?
        .iter()
        .map(|rec| dot(&alpha, &rec.point))
        .max()
        .expect("pointed system has basic solutions");

    const MAX_RETRIES: usize = 64;
    for retry in 0..MAX_RETRIES {
        let beta = &beta_base + Rational::from_integer(retry.into());
        if beta <= max_alpha_value {
            continue;
        }
        let augmented = system.with_row(alpha.clone(), beta.clone(), Some(String::from("box")));
        if check_nondegenerate(&augmented)?.ok {
            return Ok(BoxRow {
                alpha,
                beta,
                augmented,
                retries: retry,
            });
        }
    }
    Err(BuildError::RetryExhausted {
        attempts: MAX_RETRIES,
    })
}

/// Record of a recentering: the applied shift and per-row scaling factors,
/// enough to map points of the recentered system back to the original space.
#[derive(Clone, Debug)]
pub struct ShiftRecord {
    pub offset: Vec<Rational>,
    pub row_factors: Vec<Rational>,
}

impl ShiftRecord {
    pub fn map_point_back(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter().zip(&self.offset).map(|(a, b)| a + b).collect()
    }
}

/// Substitutes `x -> x + o` so the interior point `o` becomes the origin,
/// then scales each row to integrality. The right-hand side of the result is
/// strictly positive.
pub fn recenter(
    system: &InequalitySystem,
    o: &[Rational],
) -> Result<(InequalitySystem, ShiftRecord), BuildError> {
    if !system.is_strictly_feasible(o) {
        return Err(BuildError::NotInterior);
    }
    let shifted_b: Vec<Rational> = (0..system.m())
        .map(|i| system.rhs(i) - dot(system.row(i), o))
        .collect();
    let shifted = InequalitySystem::new(system.a().clone(), shifted_b)
        .expect("shift preserves shape");
    let (scaled, row_factors) = shifted.scale_to_integrality();
    debug_assert!(scaled.b().iter().all(Signed::is_positive));
    Ok((
        scaled,
        ShiftRecord {
            offset: o.to_vec(),
            row_factors,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{pow2, rat, ratio, to_rationals};

    fn square() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1])
    }

    fn triangle() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1])
    }

    #[test]
    fn interior_point_square_certified() {
        let s = square();
        let basis = Basis::new(&s, alloc::vec![0, 2]).unwrap();
        let o = interior_point(&s, &basis, Mode::Certified).unwrap();
        // <A,b> = 20, lambda = 2^-42, ray sum (-1,-1) of l1-norm 2.
        let expected = rat(1) - Rational::new(1.into(), pow2(43));
        assert_eq!(o, alloc::vec![expected.clone(), expected]);
    }

    #[test]
    fn interior_point_triangle_inward() {
        let s = triangle();
        let basis = Basis::new(&s, alloc::vec![0, 1]).unwrap();
        let o = interior_point(&s, &basis, Mode::Certified).unwrap();
        // <A,b> = 14, lambda = 2^-30, step (1,1)/2 from the origin corner.
        let expected = Rational::new(1.into(), pow2(31));
        assert_eq!(o, alloc::vec![expected.clone(), expected]);
        assert!(s.is_strictly_feasible(&o));
        let o = interior_point(&s, &basis, Mode::Practical).unwrap();
        assert!(s.is_strictly_feasible(&o));
    }

    #[test]
    fn interior_point_rejects_non_vertex() {
        let s = square();
        assert!(Basis::new(&s, alloc::vec![0, 1]).is_err());
        // Basis of an infeasible basic solution: the square corner (1, 1)
        // is cut off by the extra row x + y <= 1.
        let cut = square().with_row(to_rationals(&[1, 1]), rat(1), None);
        let basis = Basis::new(&cut, alloc::vec![0, 2]).unwrap();
        assert_eq!(
            interior_point(&cut, &basis, Mode::Practical).unwrap_err(),
            BuildError::NotAVertex
        );
    }

    #[test]
    fn box_row_square() {
        let s = square();
        let basis = Basis::new(&s, alloc::vec![0, 2]).unwrap();
        let result = box_inequality(&s, &basis).unwrap();
        assert_eq!(result.alpha, to_rationals(&[-1, -1]));
        assert_eq!(result.beta, Rational::from_integer(pow2(42)) + rat(1));
        assert_eq!(result.retries, 0);
        assert_eq!(result.augmented.m(), 5);
        assert!(check_nondegenerate(&result.augmented).unwrap().ok);
    }

    #[test]
    fn box_row_on_simplex_is_redundant() {
        let s = triangle();
        let basis = Basis::new(&s, alloc::vec![0, 1]).unwrap();
        let result = box_inequality(&s, &basis).unwrap();
        let flags = crate::polytope::irredundant_rows(&result.augmented).unwrap();
        assert!(!flags[3]);
    }

    #[test]
    fn recenter_triangle() {
        let o = alloc::vec![ratio(1, 4), ratio(1, 4)];
        let (scaled, record) = recenter(&triangle(), &o).unwrap();
        assert_eq!(scaled.b(), &[rat(1), rat(1), rat(1)]);
        assert_eq!(record.row_factors, alloc::vec![rat(4), rat(4), rat(2)]);
        assert_eq!(scaled.row(2), &[rat(2), rat(2)]);
        assert_eq!(
            record.map_point_back(&[rat(0), rat(0)]),
            alloc::vec![ratio(1, 4), ratio(1, 4)]
        );
        // Already centered: identity.
        let (same, record) = recenter(&square(), &[rat(0), rat(0)]).unwrap();
        assert_eq!(same, square());
        assert!(record.row_factors.iter().all(|f| f == &rat(1)));
        // Boundary point rejected.
        assert_eq!(
            recenter(&square(), &[rat(1), rat(0)]).unwrap_err(),
            BuildError::NotInterior
        );
    }
}

//! Enumeration of basic solutions and extreme rays.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::OracleError;
use crate::matrix::RationalMatrix;
use crate::rational::{denominator_lcm, Int, Rational};
use crate::system::InequalitySystem;

/// One basic-solution point of the hyperplane arrangement.
///
/// Infeasible records are kept on purpose: the distance statistics and the
/// perturbation properties quantify over feasible and infeasible basic
/// solutions alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub point: Vec<Rational>,
    pub tight_rows: BTreeSet<usize>,
    pub defining_bases: Vec<Vec<usize>>,
    pub feasible: bool,
}

/// Integer copy of a system: each row (with its right-hand side) multiplied
/// by its least common denominator. Solutions, tight sets, and feasibility
/// are unchanged under the positive row scaling.
pub(crate) struct IntSystem {
    pub rows: Vec<Vec<Int>>,
    pub rhs: Vec<Int>,
}

impl IntSystem {
    pub fn of(system: &InequalitySystem) -> Self {
        let mut rows = Vec::with_capacity(system.m());
        let mut rhs = Vec::with_capacity(system.m());
        for i in 0..system.m() {
            let mut all: Vec<Rational> = system.row(i).to_vec();
            all.push(system.rhs(i).clone());
            let l = denominator_lcm(&all);
            rows.push(
                system
                    .row(i)
                    .iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect::<Vec<Int>>(),
            );
            rhs.push(system.rhs(i).numer() * (&l / system.rhs(i).denom()));
        }
        Self { rows, rhs }
    }

    /// Sign of `A_i x - b_i` for `x` given as numerators over a positive
    /// common denominator; pure integer arithmetic.
    pub fn slack_sign(&self, i: usize, nums: &[Int], den: &Int) -> i8 {
        let mut acc = -(&self.rhs[i] * den);
        for (a, x) in self.rows[i].iter().zip(nums) {
            acc += a * x;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Enumerates every nonsingular `d`-subset of rows, solves it, and merges
/// records that share a point. Output is sorted by point, so the result is
/// deterministic regardless of subset order. All determinant and sign work
/// happens on a denominator-cleared integer copy.
pub fn basic_solutions(system: &InequalitySystem) -> Result<Vec<VertexRecord>, OracleError> {
    let d = system.d();
    if system.a().rank() < d {
        return Err(OracleError::RankDeficient);
    }
    let ints = IntSystem::of(system);
    // point -> (defining subsets, integer numerators, positive denominator)
    type Grouped = BTreeMap<Vec<Rational>, (Vec<Vec<usize>>, Vec<Int>, Int)>;
    let mut by_point: Grouped = BTreeMap::new();
    for subset in (0..system.m()).combinations(d) {
        let rows_sub: Vec<Vec<Int>> = subset.iter().map(|&i| ints.rows[i].clone()).collect();
        let rhs_sub: Vec<Int> = subset.iter().map(|&i| ints.rhs[i].clone()).collect();
        let Some((nums, den)) = crate::matrix::int_cramer(&rows_sub, &rhs_sub) else {
            continue;
        };
        let point: Vec<Rational> = nums
            .iter()
            .map(|n| Rational::new(n.clone(), den.clone()))
            .collect();
        by_point
            .entry(point)
            .or_insert_with(|| (Vec::new(), nums, den))
            .0
            .push(subset);
    }
    Ok(by_point
        .into_iter()
        .map(|(point, (defining_bases, nums, den))| {
            let mut tight_rows = BTreeSet::new();
            let mut feasible = true;
            for i in 0..system.m() {
                match ints.slack_sign(i, &nums, &den) {
                    0 => {
                        tight_rows.insert(i);
                    }
                    1 => feasible = false,
                    _ => {}
                }
            }
            VertexRecord {
                point,
                tight_rows,
                defining_bases,
                feasible,
            }
        })
        .collect())
}

/// A nonzero kernel vector of `m`, or `None` when the kernel is trivial.
fn kernel_vector(m: &RationalMatrix) -> Option<Vec<Rational>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut work: Vec<Vec<Rational>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pr);
        let pivot = work[rank][col].clone();
        for r in 0..rows {
            if r == rank || work[r][col].is_zero() {
                continue;
            }
            let factor = &work[r][col] / &pivot;
            let pivot_row = work[rank].clone();
            for (value, source) in work[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *value -= &factor * source;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut v = alloc::vec![Rational::zero(); cols];
    v[free_col] = Rational::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -&work[r][free_col] / &work[r][pc];
    }
    Some(v)
}

/// Scales a nonzero rational direction to a primitive integer vector.
fn normalize_direction(v: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(v);
    let ints: Vec<Int> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let mut g = Int::zero();
    for z in &ints {
        g = num_integer::gcd(g, z.abs());
    }
    if g.is_zero() {
        g = Int::one();
    }
    ints.into_iter()
        .map(|z| Rational::from_integer(z / &g))
        .collect()
}

/// Extreme rays of the recession cone `{r : Ar <= 0}`, as primitive integer
/// directions. Requires the cone to be pointed, i.e. `rank(A) = d`; the
/// result is empty exactly when the polyhedron is bounded.
pub fn extreme_rays(system: &InequalitySystem) -> Result<Vec<Vec<Rational>>, OracleError> {
    let d = system.d();
    if system.a().rank() < d {
        return Err(OracleError::RankDeficient);
    }
    let mut rays: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for subset in (0..system.m()).combinations(d.saturating_sub(1)) {
        let sub = system.a().select_rows(&subset);
        if sub.rank() + 1 != d && d > 0 {
            continue;
        }
        let Some(dir) = kernel_vector(&sub).or_else(|| {
            // A 0 x d matrix (d = 1 case) has the full space as kernel.
            (sub.rows() == 0).then(|| {
                let mut v = alloc::vec![Rational::zero(); d];
                v[0] = Rational::one();
                v
            })
        }) else {
            continue;
        };
        for candidate in [dir.clone(), dir.iter().map(|q| -q).collect()] {
            let values = system.a().mul_vec(&candidate);
            if values.iter().all(|v| !v.is_positive()) {
                rays.insert(normalize_direction(&candidate));
            }
        }
    }
    Ok(rays.into_iter().collect())
}

/// Bounded iff the recession cone is trivial.
pub fn is_bounded(system: &InequalitySystem) -> Result<bool, OracleError> {
    Ok(extreme_rays(system)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_rationals};

    fn triangle() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1])
    }

    fn square() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1])
    }

    #[test]
    fn triangle_vertices() {
        let recs = basic_solutions(&triangle()).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(recs.iter().all(|r| r.feasible && r.defining_bases.len() == 1));
        let points: Vec<_> = recs.iter().map(|r| r.point.clone()).collect();
        assert!(points.contains(&to_rationals(&[0, 0])));
        assert!(points.contains(&to_rationals(&[1, 0])));
        assert!(points.contains(&to_rationals(&[0, 1])));
    }

    #[test]
    fn square_vertices_skip_singular_pairs() {
        let recs = basic_solutions(&square()).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.feasible));
    }

    #[test]
    fn single_row_line() {
        let s = InequalitySystem::from_int_rows(&[&[1]], &[3]);
        let recs = basic_solutions(&s).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].point, alloc::vec![rat(3)]);
        assert!(recs[0].feasible);
    }

    #[test]
    fn rank_deficiency_detected() {
        let s = InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0]], &[1, 1]);
        assert_eq!(basic_solutions(&s).unwrap_err(), OracleError::RankDeficient);
    }

    #[test]
    fn rays_of_bounded_and_unbounded() {
        assert!(extreme_rays(&square()).unwrap().is_empty());
        assert!(is_bounded(&triangle()).unwrap());
        // Quadrant-like cone: two rays.
        let s = InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1]], &[0, 0]);
        let rays = extreme_rays(&s).unwrap();
        assert_eq!(rays.len(), 2);
        assert!(rays.contains(&to_rationals(&[1, 0])));
        assert!(rays.contains(&to_rationals(&[0, 1])));
        // One-dimensional halfline.
        let s = InequalitySystem::from_int_rows(&[&[1]], &[1]);
        assert_eq!(extreme_rays(&s).unwrap(), alloc::vec![to_rationals(&[-1])]);
    }
}

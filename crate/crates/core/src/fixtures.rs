//! Deterministic desk-scale fixtures: centered polygons with small integer
//! normals, cubes, and their box-augmented variants.

use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::Zero;

use crate::construct::box_inequality;
use crate::system::{Basis, InequalitySystem};

/// The triangle `-x <= 0, -y <= 0, x + y <= 1`.
pub fn triangle() -> InequalitySystem {
    InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1])
}

/// The triangle recentred at `(1/4, 1/4)` and scaled integral: all
/// right-hand sides are one.
pub fn centered_triangle() -> InequalitySystem {
    InequalitySystem::from_int_rows(&[&[-4, 0], &[0, -4], &[2, 2]], &[1, 1, 1])
}

/// The square `|x| <= 1, |y| <= 1`.
pub fn square() -> InequalitySystem {
    InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1])
}

/// A hexagon with the origin interior; normals at pairwise distinct angles.
pub fn hexagon() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[&[1, 0], &[1, 2], &[-1, 2], &[-1, 0], &[-1, -2], &[1, -2]],
        &[4, 9, 9, 4, 9, 9],
    )
}

/// An octagon: axis normals plus diagonals.
pub fn octagon() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[
            &[1, 0],
            &[1, 1],
            &[0, 1],
            &[-1, 1],
            &[-1, 0],
            &[-1, -1],
            &[0, -1],
            &[1, -1],
        ],
        &[4, 6, 4, 6, 4, 6, 4, 6],
    )
}

/// A decagon from ten lattice directions in convex position.
pub fn decagon() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[
            &[1, 0],
            &[2, 1],
            &[1, 2],
            &[0, 1],
            &[-1, 2],
            &[-2, 1],
            &[-1, 0],
            &[-2, -1],
            &[0, -1],
            &[2, -1],
        ],
        &[9, 20, 20, 9, 20, 20, 9, 20, 9, 20],
    )
}

/// A twelve-gon from twelve lattice directions in convex position.
pub fn twelvegon() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[
            &[1, 0],
            &[2, 1],
            &[1, 2],
            &[0, 1],
            &[-1, 2],
            &[-2, 1],
            &[-1, 0],
            &[-2, -1],
            &[-1, -2],
            &[0, -1],
            &[1, -2],
            &[2, -1],
        ],
        &[9, 20, 20, 9, 20, 20, 9, 20, 20, 9, 20, 20],
    )
}

/// A polygon with `n` facets for `n` in `{3, 4, 6, 8, 10, 12}`.
pub fn polygon(n: usize) -> InequalitySystem {
    match n {
        3 => centered_triangle(),
        4 => square(),
        6 => hexagon(),
        8 => octagon(),
        10 => decagon(),
        12 => twelvegon(),
        _ => panic!("no fixture polygon with {n} facets"),
    }
}

/// The cube `|x_i| <= 1` in three variables.
pub fn cube() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ],
        &[1, 1, 1, 1, 1, 1],
    )
}

/// The cube with two opposite corners cut off: a simple 3-polytope with
/// eight facets.
pub fn truncated_cube() -> InequalitySystem {
    InequalitySystem::from_int_rows(
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
            &[2, 2, 2],
            &[-2, -2, -2],
        ],
        &[1, 1, 1, 1, 1, 1, 5, 5],
    )
}

/// The lexicographically first basis describing a feasible vertex.
pub fn first_feasible_basis(system: &InequalitySystem) -> Option<Vec<usize>> {
    for subset in (0..system.m()).combinations(system.d()) {
        let sub = system.a().select_rows(&subset);
        let Ok(det) = sub.det() else { continue };
        if det.is_zero() {
            continue;
        }
        let rhs: Vec<_> = subset.iter().map(|&i| system.b()[i].clone()).collect();
        let point = sub.solve_vec(&rhs).expect("nonsingular");
        if system.is_feasible(&point) {
            return Some(subset);
        }
    }
    None
}

/// A system made simplex-containing by one bounding row at its first
/// feasible vertex, together with the core indices (the basis rows plus the
/// new row).
pub fn augment(system: &InequalitySystem) -> (InequalitySystem, Vec<usize>) {
    let basis_rows = first_feasible_basis(system).expect("fixture has a vertex");
    let basis = Basis::new(system, basis_rows.clone()).expect("basis validated");
    let boxed = box_inequality(system, &basis).expect("fixture accepts a bounding row");
    let mut core = basis_rows;
    core.push(system.m());
    core.sort_unstable();
    (boxed.augmented, core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{
        build_graph, check_nondegenerate, check_simplicity, irredundant_rows,
    };
    use crate::rational::rat;

    #[test]
    fn polygons_are_what_they_claim() {
        for n in [3usize, 4, 6, 8, 10, 12] {
            let p = polygon(n);
            assert_eq!(p.m(), n);
            // Origin strictly interior.
            let origin = alloc::vec![rat(0); 2];
            assert!(p.is_strictly_feasible(&origin), "origin interior of {n}-gon");
            let graph = build_graph(&p).unwrap();
            assert_eq!(graph.vertex_count(), n, "{n}-gon has {n} vertices");
            assert!(check_nondegenerate(&p).unwrap().ok, "{n}-gon non-degenerate");
            assert!(
                irredundant_rows(&p).unwrap().iter().all(|&b| b),
                "{n}-gon rows all facets"
            );
        }
    }

    #[test]
    fn cubes_are_simple_and_nondegenerate() {
        for s in [cube(), truncated_cube()] {
            assert!(check_nondegenerate(&s).unwrap().ok);
            let report = check_simplicity(&s).unwrap();
            assert!(report.ok);
            assert!(report.redundant_rows.is_empty());
        }
        assert_eq!(build_graph(&truncated_cube()).unwrap().vertex_count(), 12);
    }

    #[test]
    fn augmentation_preserves_shape() {
        for (s, d) in [(square(), 2), (hexagon(), 2), (cube(), 3)] {
            let (aug, core) = augment(&s);
            assert_eq!(aug.m(), s.m() + 1);
            assert_eq!(core.len(), d + 1);
            assert!(check_nondegenerate(&aug).unwrap().ok);
            assert_eq!(
                crate::polytope::find_simplex_subsystem(&aug.sub_system(&core)),
                Some((0..=d).collect::<Vec<_>>())
            );
        }
    }
}

//! Seeded random generators for small pointed systems and linear programs.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::RationalMatrix;
use crate::rational::{rat, Rational};
use crate::system::InequalitySystem;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_row(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    loop {
        let row: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-5i64..=5))).collect();
        if row.iter().any(|v| !num_traits::Zero::is_zero(v)) {
            return row;
        }
    }
}

/// A random system with `d <= 3`, `m <= 6`, entries in `[-5, 5]`, and
/// `rank(A) = d` so that the polyhedron is pointed.
pub fn random_pointed_system(rng: &mut ChaCha8Rng) -> InequalitySystem {
    loop {
        let d = rng.gen_range(1usize..=3);
        let m = rng.gen_range(d..=6);
        let rows: Vec<Vec<Rational>> = (0..m).map(|_| random_row(rng, d)).collect();
        let b: Vec<Rational> = (0..m).map(|_| rat(rng.gen_range(-5i64..=5))).collect();
        let a = RationalMatrix::from_rows(&rows);
        if a.rank() < d {
            continue;
        }
        return InequalitySystem::new(a, b).expect("rows are nonzero");
    }
}

/// A random linear program in split form: general rows `Ax <= b` (the
/// nonnegativity rows are implied) and an objective.
pub fn random_lp(rng: &mut ChaCha8Rng) -> (InequalitySystem, Vec<Rational>) {
    let d = rng.gen_range(1usize..=3);
    let m = rng.gen_range(1usize..=6);
    let rows: Vec<Vec<Rational>> = (0..m).map(|_| random_row(rng, d)).collect();
    let b: Vec<Rational> = (0..m).map(|_| rat(rng.gen_range(-5i64..=5))).collect();
    let c: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-5i64..=5))).collect();
    let general =
        InequalitySystem::new(RationalMatrix::from_rows(&rows), b).expect("rows are nonzero");
    (general, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let mut a = rng_from_seed(11);
        let mut b = rng_from_seed(11);
        for _ in 0..5 {
            assert_eq!(random_pointed_system(&mut a), random_pointed_system(&mut b));
        }
        let (s1, c1) = random_lp(&mut a);
        let (s2, c2) = random_lp(&mut b);
        assert_eq!((s1, c1), (s2, c2));
    }

    #[test]
    fn pointed_systems_have_full_rank() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let s = random_pointed_system(&mut rng);
            assert_eq!(s.a().rank(), s.d());
            assert!(s.m() <= 6 && s.d() <= 3);
        }
    }
}

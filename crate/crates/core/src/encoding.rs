//! Bit-size statistics of a system and the powers of two derived from them.
//!
//! The certified construction constants are all of the form
//! `poly(d) * delta1 * 2^{k*size}`; the exact powers are materialized here.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::RationalMatrix;
use crate::rational::{encoding_size_rat, pow2, Int, Rational};
use crate::system::InequalitySystem;

/// Exponent multipliers that show up in the construction formulas.
const CACHED_MULTIPLIERS: [u64; 4] = [2, 5, 6, 8];

#[derive(Clone, Debug)]
pub struct EncodingStats {
    total_size: u64,
    delta1: Rational,
    two_pow_cache: BTreeMap<u64, Int>,
}

/// Total bit size of a matrix: the sum of its entry sizes.
pub fn encoding_size_matrix(m: &RationalMatrix) -> u64 {
    m.entries().iter().map(encoding_size_rat).sum()
}

/// `<A,b>`: the joint bit size of the coefficient matrix and right-hand side.
pub fn encoding_size_system(s: &InequalitySystem) -> u64 {
    encoding_size_matrix(s.a()) + s.b().iter().map(encoding_size_rat).sum::<u64>()
}

impl EncodingStats {
    pub fn of_system(s: &InequalitySystem) -> Self {
        let total_size = encoding_size_system(s);
        let mut delta1 = s.a().max_abs_entry();
        for v in s.b() {
            let a = num_traits::Signed::abs(v);
            if a > delta1 {
                delta1 = a;
            }
        }
        let two_pow_cache = CACHED_MULTIPLIERS
            .iter()
            .map(|&k| (k, pow2(k * total_size)))
            .collect();
        Self {
            total_size,
            delta1,
            two_pow_cache,
        }
    }

    /// `<A,b>` itself.
    pub fn total_size(&self) -> u64 {
        self.total_size
    }

    /// Maximum absolute entry of `(A, b)`.
    pub fn delta1(&self) -> &Rational {
        &self.delta1
    }

    /// Exact `2^{k * <A,b>}`.
    pub fn two_pow_times(&self, k: u64) -> Int {
        self.two_pow_cache
            .get(&k)
            .cloned()
            .unwrap_or_else(|| pow2(k * self.total_size))
    }

    /// Same value as a rational, for direct use in formulas.
    pub fn two_pow_times_rat(&self, k: u64) -> Rational {
        Rational::from_integer(self.two_pow_times(k))
    }
}

/// Size of a point or coefficient vector.
pub fn encoding_size_vec(v: &[Rational]) -> u64 {
    v.iter().map(encoding_size_rat).sum()
}

/// Appending rows can only grow the total size; used as a sanity predicate.
pub fn sizes_monotone(parts: &[Vec<Rational>]) -> bool {
    let mut acc = 0u64;
    for part in parts {
        let here = encoding_size_vec(part);
        if here.is_zero() && !part.is_empty() {
            return false;
        }
        acc += here;
        if acc < here {
            return false;
        }
    }
    true
}

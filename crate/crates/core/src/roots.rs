//! Root-free intervals of univariate polynomials with rational coefficients.

use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootBoundError {
    ZeroConstantTerm,
    EmptyPolynomial,
}

impl fmt::Display for RootBoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootBoundError::ZeroConstantTerm => write!(f, "constant term is zero"),
            RootBoundError::EmptyPolynomial => write!(f, "polynomial has no coefficients"),
        }
    }
}

/// Lower bound on the magnitude of nonzero roots, constant term first.
///
/// Returns `1/delta` with `delta = 1 + max_k |alpha_k / alpha_0|` over the
/// non-constant coefficients. No root of the polynomial lies in the open
/// interval `(-1/delta, 1/delta)` except zero itself, so the sign of the
/// constant term persists there.
pub fn cauchy_root_bound(coeffs: &[Rational]) -> Result<Rational, RootBoundError> {
    let Some(constant) = coeffs.first() else {
        return Err(RootBoundError::EmptyPolynomial);
    };
    if constant.is_zero() {
        return Err(RootBoundError::ZeroConstantTerm);
    }
    let mut delta = Rational::one();
    for alpha in &coeffs[1..] {
        let ratio = Rational::one() + (alpha / constant).abs();
        if ratio > delta {
            delta = ratio;
        }
    }
    Ok(delta.recip())
}

/// Evaluates the polynomial (constant term first) at `x`, by Horner.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

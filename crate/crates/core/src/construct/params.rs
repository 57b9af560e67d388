//! Construction constants and the tilt coefficient of a single row.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::BuildError;
use crate::encoding::EncodingStats;
use crate::polytope::geometry_stats;
use crate::rational::{rat, Rational};
use crate::system::InequalitySystem;

/// Certified mode uses the closed-form constants driven by the encoding
/// size, giving a-priori guarantees at the price of astronomically long
/// coefficients. Practical mode derives the concentration factor from exact
/// oracle geometry and relies on a-posteriori verification instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Certified,
    Practical,
}

#[derive(Clone, Debug)]
pub struct MuStep {
    pub row: usize,
    pub mu: Rational,
    pub eps_after: Rational,
}

/// The concentration factor `D`, the initial radius, and the per-row step
/// trace of one extension build.
#[derive(Clone, Debug)]
pub struct RockParams {
    pub mode: Mode,
    pub d_factor: Rational,
    pub eps_initial: Rational,
    pub mu_schedule: Vec<MuStep>,
    pub order: Vec<usize>,
    /// Sizes of the leading batches inside `order`; remaining rows were
    /// appended one at a time.
    pub batch_sizes: Vec<usize>,
}

/// Computes `D` and the initial radius for an integral system with strictly
/// positive right-hand side (origin interior).
///
/// Certified: `D = 25 d^3 delta1 2^{6<A,b>}`. Practical:
/// `D = max(7, 4(u + 3/2)(1 + (u + 3/2)/l) + 1)` with `u` the integer upper
/// bound on the maximum basic-solution distance and `l` the lower bound on
/// the minimum hyperplane distance, both relative to the origin. Either way
/// the initial radius is `min_i b_i / (d delta1)`.
pub fn compute_params(system: &InequalitySystem, mode: Mode) -> Result<RockParams, BuildError> {
    if !system.is_integral() {
        return Err(BuildError::NotIntegral);
    }
    if !system.b().iter().all(Signed::is_positive) {
        return Err(BuildError::NonPositiveRhs);
    }
    let stats = EncodingStats::of_system(system);
    let d = Rational::from_integer(system.d().into());
    let delta1 = stats.delta1().clone();
    let d_factor = match mode {
        Mode::Certified => rat(25) * &d * &d * &d * &delta1 * stats.two_pow_times_rat(6),
        Mode::Practical => {
            let origin = alloc::vec![Rational::zero(); system.d()];
            let geo = geometry_stats(system, &origin)?;
            let reach = geo.delta1_ub + Rational::new(3.into(), 2.into());
            let candidate =
                rat(4) * &reach * (Rational::one() + &reach / geo.delta2_lb) + Rational::one();
            candidate.max(rat(7))
        }
    };
    let eps_initial = system
        .b()
        .iter()
        .min()
        .expect("nonempty system")
        .clone()
        / (&d * &delta1);
    Ok(RockParams {
        mode,
        d_factor,
        eps_initial,
        mu_schedule: Vec::new(),
        order: Vec::new(),
        batch_sizes: Vec::new(),
    })
}

/// The rational tilt coefficient of row `j` at step radius `mu`:
/// `(b_j - mu/(2d) (||A_j||_1 + b_j)) / (1 - mu^2)`.
///
/// The value must be positive, and the hyperplane it defines must keep the
/// ball of radius `mu/(4d)` around `(0, 1)` inside the halfspace; both are
/// asserted algebraically so a bad step surfaces as an error instead of a
/// corrupted extension.
pub fn a_hat(system: &InequalitySystem, row: usize, mu: &Rational) -> Result<Rational, BuildError> {
    assert!(
        mu.is_positive() && mu <= &Rational::new(1.into(), 2.into()),
        "step radius must lie in (0, 1/2]"
    );
    let d2 = rat(2) * Rational::from_integer(system.d().into());
    let b_j = system.rhs(row);
    let weight = system.row_norm1(row) + b_j;
    let value = (b_j - mu / &d2 * &weight) / (Rational::one() - mu * mu);
    if !value.is_positive() {
        return Err(BuildError::NonPositiveCoefficient { row });
    }
    // Tangency containment: distance from (0,1) to the tilted hyperplane is
    // at least mu/(4d), compared on squares.
    let margin = b_j - &value;
    let mu_quarter = mu / (rat(2) * &d2);
    let lhs = &margin * &margin;
    let rhs = &mu_quarter * &mu_quarter * (system.row_norm2_sq(row) + &value * &value);
    if !(margin.is_positive() && lhs >= rhs) {
        return Err(BuildError::ContainmentFailed { row });
    }
    Ok(value)
}

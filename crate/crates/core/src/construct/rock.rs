//! Building extensions `Ax + az <= b, z >= 0` with concentrated upper parts.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::params::{a_hat, compute_params, Mode, MuStep, RockParams};
use super::schedule::{facets_disjoint_in, Schedule};
use super::BuildError;
use crate::matrix::RationalMatrix;
use crate::rational::{rat, Rational};
use crate::system::InequalitySystem;

/// An extension of the base polytope by one variable with strictly positive
/// tilt coefficients. Projecting out the last coordinate recovers the base.
#[derive(Clone, Debug)]
pub struct RockExtension {
    base: InequalitySystem,
    a: Vec<Rational>,
    q: InequalitySystem,
    params: RockParams,
    core: Vec<usize>,
}

impl RockExtension {
    pub fn base(&self) -> &InequalitySystem {
        &self.base
    }

    /// The tilt coefficients, one per base row, all positive.
    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    /// The extension system: `m` tilted rows followed by the `z >= 0` row.
    pub fn system(&self) -> &InequalitySystem {
        &self.q
    }

    pub fn params(&self) -> &RockParams {
        &self.params
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    /// Row index of `z >= 0` in the extension system.
    pub fn z_row(&self) -> usize {
        self.base.m()
    }

    /// Re-adopts an extension system produced earlier: the last row must be
    /// `z >= 0`, the trailing column must be strictly positive, and the base
    /// it encloses must be integral with positive right-hand side. The
    /// parameter trace holds freshly computed constants with an empty step
    /// schedule.
    pub fn from_system(q: &InequalitySystem) -> Result<Self, BuildError> {
        let dq = q.d();
        if dq < 2 || q.m() < 3 {
            return Err(BuildError::DimensionMismatch {
                expected: 2,
                got: dq,
            });
        }
        let z_row = q.m() - 1;
        let last = q.row(z_row);
        let z_shape = last[..dq - 1].iter().all(Zero::is_zero)
            && last[dq - 1].is_negative()
            && q.rhs(z_row).is_zero();
        if !z_shape {
            return Err(BuildError::Oracle(crate::polytope::OracleError::NotRockShaped));
        }
        let m = z_row;
        let mut rows = Vec::with_capacity(m);
        let mut a = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for i in 0..m {
            let row = q.row(i);
            rows.push(row[..dq - 1].to_vec());
            a.push(row[dq - 1].clone());
            rhs.push(q.rhs(i).clone());
        }
        if !a.iter().all(Signed::is_positive) {
            return Err(BuildError::NonPositiveCoefficient {
                row: a.iter().position(|v| !v.is_positive()).unwrap_or(0),
            });
        }
        let base = InequalitySystem::new(RationalMatrix::from_rows(&rows), rhs)
            .map_err(|_| BuildError::DimensionMismatch {
                expected: dq - 1,
                got: 0,
            })?;
        let params = compute_params(&base, Mode::Practical)?;
        let core = crate::polytope::find_simplex_subsystem(&base).unwrap_or_default();
        Ok(Self {
            base,
            a,
            q: q.clone(),
            params,
            core,
        })
    }

    /// The intermediate extension spanned by a subset of base rows (plus the
    /// `z >= 0` row), exactly as it occurs inside the incremental build.
    pub fn sub_extension(&self, base_rows: &[usize]) -> InequalitySystem {
        let mut rows = Vec::with_capacity(base_rows.len() + 1);
        let mut rhs = Vec::with_capacity(base_rows.len() + 1);
        for &i in base_rows {
            let mut row = self.base.row(i).to_vec();
            row.push(self.a[i].clone());
            rows.push(row);
            rhs.push(self.base.rhs(i).clone());
        }
        let mut z_row = alloc::vec![Rational::zero(); self.base.d() + 1];
        z_row[self.base.d()] = rat(-1);
        rows.push(z_row);
        rhs.push(Rational::zero());
        InequalitySystem::new(RationalMatrix::from_rows(&rows), rhs)
            .expect("extension rows are nonzero")
    }
}

fn validate_core(system: &InequalitySystem, core: &[usize]) -> Result<(), BuildError> {
    let d = system.d();
    let mut sorted = core.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != d + 1 || sorted.iter().any(|&i| i >= system.m()) {
        return Err(BuildError::SimplexCoreInvalid);
    }
    match crate::polytope::find_simplex_subsystem(&system.sub_system(&sorted)) {
        Some(found) if found.len() == d + 1 => Ok(()),
        _ => Err(BuildError::SimplexCoreInvalid),
    }
}

/// One step radius: the global caps together with the current radius budget.
fn step_mu(system: &InequalitySystem, eps: &Rational, d_factor: &Rational) -> Rational {
    let d4 = rat(4) * Rational::from_integer(system.d().into());
    let mut mu = (0..system.m())
        .map(|i| &d4 * system.rhs(i) / (system.row_norm1(i) + system.rhs(i)))
        .min()
        .expect("nonempty system");
    mu = mu.min(d4.recip());
    mu.min(eps / d_factor)
}

fn build(
    system: &InequalitySystem,
    core: &[usize],
    mode: Mode,
    order: Vec<usize>,
    batch_sizes: Vec<usize>,
) -> Result<RockExtension, BuildError> {
    validate_core(system, core)?;
    let mut params = compute_params(system, mode)?;
    let core_set: BTreeSet<usize> = core.iter().copied().collect();

    let expected: BTreeSet<usize> = (0..system.m()).filter(|i| !core_set.contains(i)).collect();
    let given: BTreeSet<usize> = order.iter().copied().collect();
    if given.len() != order.len() || given != expected {
        let missing: Vec<usize> = expected.difference(&given).copied().collect();
        return Err(BuildError::UnknownRows(missing));
    }

    let d4 = rat(4) * Rational::from_integer(system.d().into());
    let mut a = alloc::vec![Rational::zero(); system.m()];
    for &i in &core_set {
        a[i] = system.rhs(i).clone();
    }
    let mut eps = params.eps_initial.clone();
    let mut schedule = Vec::with_capacity(order.len());
    for &j in &order {
        let mu = step_mu(system, &eps, &params.d_factor);
        debug_assert!(mu.is_positive() && mu < eps);
        a[j] = a_hat(system, j, &mu)?;
        eps = &mu / &d4;
        schedule.push(MuStep {
            row: j,
            mu,
            eps_after: eps.clone(),
        });
    }
    params.mu_schedule = schedule;
    params.order = order;
    params.batch_sizes = batch_sizes;

    let mut rows = Vec::with_capacity(system.m() + 1);
    let mut rhs = Vec::with_capacity(system.m() + 1);
    for (i, coefficient) in a.iter().enumerate() {
        let mut row = system.row(i).to_vec();
        row.push(coefficient.clone());
        rows.push(row);
        rhs.push(system.rhs(i).clone());
    }
    let mut z_row = alloc::vec![Rational::zero(); system.d() + 1];
    z_row[system.d()] = rat(-1);
    rows.push(z_row);
    rhs.push(Rational::zero());
    let labels = (0..system.m())
        .map(|i| {
            system
                .labels()
                .map(|l| l[i].clone())
                .unwrap_or_else(|| alloc::format!("row{i}"))
        })
        .chain(core::iter::once(String::from("z-nonneg")))
        .collect();
    let q = InequalitySystem::new(RationalMatrix::from_rows(&rows), rhs)
        .expect("extension rows are nonzero")
        .with_labels(labels);

    Ok(RockExtension {
        base: system.clone(),
        a,
        q,
        params,
        core: {
            let mut c = core.to_vec();
            c.sort_unstable();
            c
        },
    })
}

/// Builds an extension by tilting the non-core rows one at a time in input
/// order (or the override), shrinking the step radius geometrically.
///
/// The builder does not verify the diameter or concentration claims itself;
/// those are separate oracle checks.
pub fn rock_extension(
    system: &InequalitySystem,
    core: &[usize],
    mode: Mode,
    order_override: Option<Vec<usize>>,
) -> Result<RockExtension, BuildError> {
    let core_set: BTreeSet<usize> = core.iter().copied().collect();
    let order = order_override
        .unwrap_or_else(|| (0..system.m()).filter(|i| !core_set.contains(i)).collect());
    build(system, core, mode, order, Vec::new())
}

/// Batched variant: rows inside one batch define pairwise disjoint facets of
/// the polytope at their recursion level, which keeps the increasing paths
/// short. The step radii follow the same geometric sequence as the plain
/// build; only the addition order and the path accounting differ.
pub fn rock_extension_batched(
    system: &InequalitySystem,
    core: &[usize],
    schedule: &Schedule,
    mode: Mode,
) -> Result<RockExtension, BuildError> {
    let core_set: BTreeSet<usize> = core.iter().copied().collect();

    // Validate each batch against the subsystem that is live at its level:
    // the core, this batch, and everything added before it (deeper levels).
    let mut active: BTreeSet<usize> = core_set.clone();
    active.extend(schedule.leftover.iter().copied());
    for batch in schedule.batches.iter().rev() {
        active.extend(batch.iter().copied());
        for (idx_a, &i) in batch.iter().enumerate() {
            for &j in &batch[idx_a + 1..] {
                if !facets_disjoint_in(system, &active, i, j)? {
                    return Err(BuildError::ScheduleInvalid {
                        batch: schedule
                            .batches
                            .iter()
                            .position(|b| core::ptr::eq(b, batch))
                            .unwrap_or(0),
                        rows: (i, j),
                    });
                }
            }
        }
    }

    let mut order = Vec::new();
    for batch in &schedule.batches {
        order.extend(batch.iter().copied());
    }
    order.extend(schedule.leftover.iter().copied());
    let batch_sizes = schedule.batches.iter().map(Vec::len).collect();
    build(system, core, mode, order, batch_sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{
        build_graph, check_epsilon_concentrated, check_simplicity, diameter,
        z_increasing_eccentricity,
    };
    use crate::rational::rat;
    use crate::system::Basis;

    fn centered_triangle() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[-4, 0], &[0, -4], &[2, 2]], &[1, 1, 1])
    }

    fn augmented_square() -> InequalitySystem {
        let square =
            InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1]);
        let basis = Basis::new(&square, alloc::vec![0, 2]).unwrap();
        super::super::box_inequality(&square, &basis).unwrap().augmented
    }

    #[test]
    fn simplex_base_case_is_pyramid() {
        let s = centered_triangle();
        let rock = rock_extension(&s, &[0, 1, 2], Mode::Practical, None).unwrap();
        assert_eq!(rock.coefficients(), s.b());
        let g = build_graph(rock.system()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let top = g.unique_max_vertex(2).unwrap();
        assert_eq!(g.vertices()[top].point, alloc::vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn augmented_square_extension() {
        let s = augmented_square();
        let rock = rock_extension(&s, &[0, 2, 4], Mode::Practical, None).unwrap();
        assert!(rock.coefficients().iter().all(Signed::is_positive));
        let q = rock.system();
        assert_eq!(q.m(), 6);
        assert!(check_simplicity(q).unwrap().ok);
        let g = build_graph(q).unwrap();
        let top = g.unique_max_vertex(2).unwrap();
        assert_eq!(g.vertices()[top].point, alloc::vec![rat(0), rat(0), rat(1)]);
        assert!(diameter(&g).unwrap() <= 6);
        assert!(z_increasing_eccentricity(&g, 2, top).unwrap() <= 3);
        let report =
            check_epsilon_concentrated(q, &[rat(0), rat(0)], &rat(1), &rock.params().eps_initial)
                .unwrap();
        assert!(report.ok, "{:?}", report.failures);
    }

    #[test]
    fn invalid_core_rejected() {
        let s = augmented_square();
        assert_eq!(
            rock_extension(&s, &[0, 1, 2], Mode::Practical, None).unwrap_err(),
            BuildError::SimplexCoreInvalid
        );
    }

    #[test]
    fn singleton_batches_match_plain_build() {
        let s = augmented_square();
        let schedule = Schedule {
            batches: alloc::vec![alloc::vec![1], alloc::vec![3]],
            leftover: Vec::new(),
        };
        let batched = rock_extension_batched(&s, &[0, 2, 4], &schedule, Mode::Practical).unwrap();
        let plain = rock_extension(&s, &[0, 2, 4], Mode::Practical, None).unwrap();
        assert_eq!(batched.coefficients(), plain.coefficients());
    }

    #[test]
    fn adjacent_facets_in_one_batch_rejected() {
        let s = augmented_square();
        // Rows 1 and 3 share the corner (-1,-1); rows 1,2 share (-1,1).
        let schedule = Schedule {
            batches: alloc::vec![alloc::vec![1, 3]],
            leftover: Vec::new(),
        };
        // (-1,-1) is tight for rows 1 and 3, so they are adjacent facets.
        let err = rock_extension_batched(&s, &[0, 2, 4], &schedule, Mode::Practical).unwrap_err();
        assert!(matches!(err, BuildError::ScheduleInvalid { .. }));
    }
}

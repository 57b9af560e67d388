//! The end-to-end reduction: scale, perturb, feasibility phase, bounding
//! row, main solve (directly or through the prism), and basis transfer back
//! to the unperturbed data.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::phase1::phase_one;
use super::simplex::{simplex_solve, PivotRule, StrongInput};
use super::SolverError;
use crate::construct::{
    box_inequality, crooked_prism, interior_point, lift_objective, recenter, rock_extension, Mode,
    Sense,
};
use crate::matrix::RationalMatrix;
use crate::outcome::{SolveOutcome, SolveStatus};
use crate::perturb::{
    adaptive_epsilon, epsilon_bound, perturb_with_nonneg, transfer_basis, Provenance, SplitSystem,
};
use crate::rational::{denominator_lcm, dot, Rational};
use crate::system::{Basis, InequalitySystem};

/// Input shape: a general system `Ax <= b`, or the same with implied
/// nonnegative variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpForm {
    Inequality,
    NonnegSplit,
}

/// Whether the main solve runs directly on the bounded perturbed system or
/// over its prism extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Direct,
    Prism,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    pub mode: Mode,
    pub pivot: PivotRule,
    pub via: Via,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Practical,
            pivot: PivotRule::Bland,
            via: Via::Direct,
        }
    }
}

/// Exact evidence of one pipeline run.
#[derive(Clone, Debug, Default)]
pub struct PipelineTrace {
    pub epsilon: Option<Rational>,
    pub certified_epsilon: bool,
    pub phase_one_steps: u64,
    pub main_steps: u64,
    pub box_beta: Option<Rational>,
    pub alpha_in_basis: bool,
    pub via_prism: bool,
}

#[derive(Clone, Debug)]
pub enum AlphaVerdict {
    BoundedOptimal {
        basis: Vec<usize>,
        vertex: Vec<Rational>,
    },
    UnboundedWithRay {
        ray: Vec<Rational>,
    },
}

/// Reads an optimal basis of the box-augmented system.
///
/// If the bounding row is inactive the optimum is genuine. Otherwise the
/// vertex lies on the artificial facet and the cone ray escaping through it
/// decides: a strictly improving escape ray certifies unboundedness, a level
/// one is pivoted away to an equally good true vertex.
pub fn interpret_alpha_basis(
    augmented: &InequalitySystem,
    alpha_row: usize,
    basis: &[usize],
    vertex: &[Rational],
    c: &[Rational],
) -> Result<AlphaVerdict, SolverError> {
    let Ok(alpha_pos) = basis.binary_search(&alpha_row) else {
        return Ok(AlphaVerdict::BoundedOptimal {
            basis: basis.to_vec(),
            vertex: vertex.to_vec(),
        });
    };
    if augmented.tight_rows(vertex).len() != augmented.d() {
        return Err(SolverError::NotSimpleAtVertex);
    }
    let sub = augmented.a().select_rows(basis);
    let mut e = alloc::vec![Rational::zero(); augmented.d()];
    e[alpha_pos] = Rational::from_integer(1.into());
    let escape = sub.solve_vec(&e)?;
    let along = dot(c, &escape);
    if along.is_negative() {
        return Ok(AlphaVerdict::UnboundedWithRay { ray: escape });
    }
    if along.is_positive() {
        return Err(SolverError::Internal(
            "bounding row active at a non-optimal vertex",
        ));
    }
    // Level edge: walk off the artificial facet to an equally good vertex.
    let inward: Vec<Rational> = escape.iter().map(|v| -v).collect();
    let mut best: Option<(Rational, usize)> = None;
    for i in 0..augmented.m() {
        if basis.binary_search(&i).is_ok() {
            continue;
        }
        let speed = dot(augmented.row(i), &inward);
        if !speed.is_positive() {
            continue;
        }
        let t = (augmented.rhs(i) - dot(augmented.row(i), vertex)) / speed;
        if best.as_ref().is_none_or(|(t_best, _)| &t < t_best) {
            best = Some((t, i));
        }
    }
    let Some((t, enter)) = best else {
        return Err(SolverError::Internal("level escape edge is unbounded"));
    };
    let moved: Vec<Rational> = vertex
        .iter()
        .zip(&inward)
        .map(|(x, dir)| x + &t * dir)
        .collect();
    let mut new_basis: Vec<usize> = basis
        .iter()
        .copied()
        .filter(|&r| r != alpha_row)
        .collect();
    let at = new_basis.partition_point(|&r| r < enter);
    new_basis.insert(at, enter);
    Ok(AlphaVerdict::BoundedOptimal {
        basis: new_basis,
        vertex: moved,
    })
}

/// Scales a rational direction to a primitive integer one.
fn primitive_direction(v: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(v);
    let ints: Vec<crate::rational::Int> =
        v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let mut g = crate::rational::Int::from(0);
    for z in &ints {
        g = num_integer::gcd(g, z.abs());
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|z| Rational::from_integer(z / &g))
        .collect()
}

/// Main solve over the box-augmented perturbed system, through the prism:
/// recenter, build the extension and its prism, lift the objective, and run
/// the simplex over the prism from the lifted start. Returns the optimal
/// basis and vertex of the augmented system plus the step count.
fn prism_main_solve(
    augmented: &InequalitySystem,
    start_basis: &[usize],
    start_vertex: &[Rational],
    alpha_row: usize,
    c: &[Rational],
    pivot: PivotRule,
) -> Result<(Vec<usize>, Vec<Rational>, u64), SolverError> {
    let basis = Basis::new(augmented, start_basis.to_vec())
        .map_err(|_| SolverError::NotAVertex)?;
    let o = interior_point(augmented, &basis, Mode::Practical)?;
    let (centered, shift) = recenter(augmented, &o)?;
    let mut core: Vec<usize> = start_basis.to_vec();
    core.push(alpha_row);
    core.sort_unstable();
    let rock = rock_extension(&centered, &core, Mode::Practical, None)?;
    let prism = crooked_prism(&rock);
    let lifted = lift_objective(&prism, c, Sense::Min, false)?;
    let minus_c_hat: Vec<Rational> = lifted.c_hat.iter().map(|v| -v).collect();

    let centered_start: Vec<Rational> = start_vertex
        .iter()
        .zip(&o)
        .map(|(x, off)| x - off)
        .collect();
    let embedded = prism.embed_base_vertex(&centered_start);
    let tight = prism.system().tight_rows(&embedded);
    let hat_basis = super::phase1::first_nonsingular_rows(prism.system(), &tight)
        .ok_or(SolverError::NotAVertex)?;
    let input = StrongInput::new(prism.system().clone(), hat_basis)?;
    let out = simplex_solve(&input, &minus_c_hat, pivot)?;
    if out.status != SolveStatus::Optimal {
        return Err(SolverError::Internal("prism walk must terminate optimally"));
    }
    let w = out.vertex.expect("optimal outcome");
    let projected = shift.map_point_back(&w[..augmented.d()]);
    let tight = augmented.tight_rows(&projected);
    if tight.len() != augmented.d() {
        return Err(SolverError::NotSimpleAtVertex);
    }
    Ok((tight, projected, out.steps))
}

/// Solves `min c^T x` over the given system exactly.
///
/// `NonnegSplit` treats the rows as `Ax <= b` with `x >= 0` implied and is
/// the native pipeline shape; `Inequality` splits free variables into
/// differences first. The answer is for the original, unperturbed data.
pub fn solve_lp(
    general: &InequalitySystem,
    c: &[Rational],
    form: LpForm,
    config: &SolveConfig,
) -> Result<(SolveOutcome, PipelineTrace), SolverError> {
    assert_eq!(c.len(), general.d(), "objective dimension mismatch");
    match form {
        LpForm::NonnegSplit => solve_nonneg_split(general, c, config),
        LpForm::Inequality => {
            let d = general.d();
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(general.m());
            for i in 0..general.m() {
                let mut row = general.row(i).to_vec();
                row.extend(general.row(i).iter().map(|v| -v));
                rows.push(row);
            }
            let doubled = InequalitySystem::new(
                RationalMatrix::from_rows(&rows),
                general.b().to_vec(),
            )
            .expect("doubled rows are nonzero");
            let mut c2: Vec<Rational> = c.to_vec();
            c2.extend(c.iter().map(|v| -v));
            let (out, trace) = solve_nonneg_split(&doubled, &c2, config)?;
            let fold = |v: &[Rational]| -> Vec<Rational> {
                (0..d).map(|j| &v[j] - &v[d + j]).collect()
            };
            let folded_vertex = out.vertex.as_deref().map(fold);
            let basis = folded_vertex.as_ref().and_then(|x| {
                let tight = general.tight_rows(x);
                super::phase1::first_nonsingular_rows(general, &tight)
            });
            let outcome = SolveOutcome {
                status: out.status,
                basis,
                vertex: folded_vertex,
                objective: out.objective,
                steps: out.steps,
                ray: out.ray.as_deref().map(fold).map(|r| primitive_direction(&r)),
            };
            Ok((outcome, trace))
        }
    }
}

fn solve_nonneg_split(
    general: &InequalitySystem,
    c: &[Rational],
    config: &SolveConfig,
) -> Result<(SolveOutcome, PipelineTrace), SolverError> {
    let mut trace = PipelineTrace {
        via_prism: config.via == Via::Prism,
        ..PipelineTrace::default()
    };

    let (gen_int, _) = general.scale_to_integrality();
    let c_lcm = Rational::from_integer(denominator_lcm(c));
    let c_int: Vec<Rational> = c.iter().map(|v| v * &c_lcm).collect();
    let split = SplitSystem::from_general(&gen_int);

    let epsilon = match config.mode {
        Mode::Certified => {
            let size = split.system().m();
            if size > 8 {
                return Err(SolverError::CertifiedTooLarge {
                    rows_plus_dim: size,
                });
            }
            trace.certified_epsilon = true;
            epsilon_bound(split.system(), &c_int)
        }
        Mode::Practical => adaptive_epsilon(split.system(), &c_int)?.0,
    };
    trace.epsilon = Some(epsilon.clone());
    let provenance = if trace.certified_epsilon {
        Provenance::CertifiedFormula
    } else {
        Provenance::Adaptive(0)
    };
    let perturbation = perturb_with_nonneg(&split, &epsilon, provenance);

    let phase = phase_one(&split, &perturbation)?;
    trace.phase_one_steps = phase.outcome.steps;
    let Some((x_star, start_basis)) = phase.feasible else {
        return Ok((SolveOutcome::infeasible(trace.phase_one_steps), trace));
    };

    let scaled = perturbation.scaled();
    let basis = Basis::new(scaled, start_basis.clone()).map_err(|_| SolverError::NotAVertex)?;
    let boxed = box_inequality(scaled, &basis)?;
    trace.box_beta = Some(boxed.beta.clone());
    let alpha_row = scaled.m();

    let (opt_basis, opt_vertex, steps) = match config.via {
        Via::Direct => {
            let input = StrongInput::new(boxed.augmented.clone(), start_basis)?;
            let out = simplex_solve(&input, &c_int, config.pivot)?;
            if out.status != SolveStatus::Optimal {
                return Err(SolverError::Internal("augmented system must be bounded"));
            }
            (
                out.basis.expect("optimal outcome"),
                out.vertex.expect("optimal outcome"),
                out.steps,
            )
        }
        Via::Prism => prism_main_solve(
            &boxed.augmented,
            &start_basis,
            &x_star,
            alpha_row,
            &c_int,
            config.pivot,
        )?,
    };
    trace.main_steps = steps;
    let total_steps = trace.phase_one_steps + trace.main_steps;

    match interpret_alpha_basis(&boxed.augmented, alpha_row, &opt_basis, &opt_vertex, &c_int)? {
        AlphaVerdict::UnboundedWithRay { ray } => {
            trace.alpha_in_basis = true;
            let ray = primitive_direction(&ray);
            let ok = split
                .system()
                .a()
                .mul_vec(&ray)
                .iter()
                .all(|v| !v.is_positive())
                && dot(&c_int, &ray).is_negative();
            if !ok {
                return Err(SolverError::Internal("escape ray fails the exact certificate"));
            }
            Ok((SolveOutcome::unbounded(ray, total_steps), trace))
        }
        AlphaVerdict::BoundedOptimal { basis, vertex: _ } => {
            let point = transfer_basis(&basis, &perturbation)?;
            let objective = dot(c, &point);
            Ok((
                SolveOutcome::optimal(basis, point, objective, total_steps),
                trace,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::enumerate_optimum;
    use crate::rational::{rat, to_rationals};

    fn solve(rows: &[&[i64]], rhs: &[i64], c: &[i64], config: &SolveConfig) -> SolveOutcome {
        let general = InequalitySystem::from_int_rows(rows, rhs);
        solve_lp(&general, &to_rationals(c), LpForm::NonnegSplit, config)
            .unwrap()
            .0
    }

    #[test]
    fn box_lp_reaches_far_corner() {
        let out = solve(
            &[&[1, 0], &[0, 1]],
            &[1, 1],
            &[-1, -1],
            &SolveConfig::default(),
        );
        assert_eq!(out.status, SolveStatus::Optimal);
        assert_eq!(out.objective, Some(rat(-2)));
        assert_eq!(out.vertex, Some(to_rationals(&[1, 1])));
    }

    #[test]
    fn unbounded_certificate() {
        let out = solve(&[&[1, -1]], &[0], &[-1, 0], &SolveConfig::default());
        assert_eq!(out.status, SolveStatus::Unbounded);
        let ray = out.ray.unwrap();
        assert!(dot(&to_rationals(&[-1, 0]), &ray).is_negative());
        assert!(ray.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn infeasible_via_phase_one() {
        let out = solve(&[&[1]], &[-1], &[1], &SolveConfig::default());
        assert_eq!(out.status, SolveStatus::Infeasible);
    }

    #[test]
    fn certified_small_instance() {
        let config = SolveConfig {
            mode: Mode::Certified,
            ..SolveConfig::default()
        };
        let out = solve(&[&[1, 0], &[0, 1]], &[1, 1], &[-1, -2], &config);
        assert_eq!(out.objective, Some(rat(-3)));
        let too_big = InequalitySystem::from_int_rows(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 1, -1], &[1, -1, 1]],
            &[1, 1, 1, 2, 2, 2],
        );
        assert!(matches!(
            solve_lp(&too_big, &to_rationals(&[1, 1, 1]), LpForm::NonnegSplit, &config),
            Err(SolverError::CertifiedTooLarge { .. })
        ));
    }

    #[test]
    fn inequality_form_splits_free_variables() {
        // min x over x >= -3 (unrestricted sign).
        let general = InequalitySystem::from_int_rows(&[&[-1]], &[3]);
        let (out, _) = solve_lp(
            &general,
            &to_rationals(&[1]),
            LpForm::Inequality,
            &SolveConfig::default(),
        )
        .unwrap();
        assert_eq!(out.status, SolveStatus::Optimal);
        assert_eq!(out.objective, Some(rat(-3)));
        assert_eq!(out.vertex, Some(to_rationals(&[-3])));
        assert_eq!(out.basis, Some(alloc::vec![0]));
    }

    #[test]
    fn alpha_basis_interpretation_on_a_halfline() {
        // x <= 1 bounded by an artificial row x >= -beta; minimizing x lands
        // on the artificial facet and the escape ray points down.
        let augmented = InequalitySystem::from_int_rows(&[&[1], &[-1]], &[1, 100]);
        let vertex = vec![rat(-100)];
        let verdict = interpret_alpha_basis(
            &augmented,
            1,
            &[1],
            &vertex,
            &to_rationals(&[1]),
        )
        .unwrap();
        match verdict {
            AlphaVerdict::UnboundedWithRay { ray } => assert_eq!(ray, to_rationals(&[-1])),
            other => panic!("expected the unbounded verdict, got {other:?}"),
        }
        // A bounded objective never activates the artificial row.
        let verdict = interpret_alpha_basis(
            &augmented,
            1,
            &[0],
            &to_rationals(&[1]),
            &to_rationals(&[-1]),
        )
        .unwrap();
        assert!(matches!(verdict, AlphaVerdict::BoundedOptimal { .. }));
        // A level escape edge pivots off to an equally good true vertex.
        let verdict = interpret_alpha_basis(
            &augmented,
            1,
            &[1],
            &vertex,
            &to_rationals(&[0]),
        )
        .unwrap();
        match verdict {
            AlphaVerdict::BoundedOptimal { basis, vertex } => {
                assert_eq!(basis, vec![0]);
                assert_eq!(vertex, to_rationals(&[1]));
            }
            other => panic!("expected a pivot off the facet, got {other:?}"),
        }
    }

    #[test]
    fn prism_route_matches_direct() {
        let rows: &[&[i64]] = &[&[1, 2], &[2, 1]];
        let rhs = &[4, 4];
        for c in [[-1i64, -1], [-3, 1], [0, -1]] {
            let direct = solve(rows, rhs, &c, &SolveConfig::default());
            let prism = solve(
                rows,
                rhs,
                &c,
                &SolveConfig {
                    via: Via::Prism,
                    ..SolveConfig::default()
                },
            );
            assert_eq!(direct.status, prism.status);
            assert_eq!(direct.objective, prism.objective);
            let general = InequalitySystem::from_int_rows(rows, rhs);
            let split = crate::perturb::SplitSystem::from_general(&general);
            let oracle = enumerate_optimum(split.system(), &to_rationals(&c));
            assert_eq!(direct.objective, oracle.objective);
        }
    }
}

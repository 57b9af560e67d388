//! Geometric right-hand-side perturbation `b + (eps, eps^2, ..., eps^m)`.
//!
//! At a small enough radius the perturbed system is non-degenerate while
//! every feasible basis still describes a vertex of the original polyhedron
//! and optimal bases carry over. The certified radius comes from a closed
//! formula; the adaptive variant searches downward and accepts only after
//! the full property suite verifies against the enumeration oracle.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::encoding::EncodingStats;
use crate::polytope::{basic_solutions, check_nondegenerate, enumerate_optimum, OracleError};
use crate::rational::{dot, norm1, rat, Rational};
use crate::system::InequalitySystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerturbError {
    RowsNotIdentified,
    TransferInfeasible,
    NotFound,
    NotIntegral,
    Oracle(OracleError),
}

impl fmt::Display for PerturbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerturbError::RowsNotIdentified => {
                write!(f, "trailing rows are not the expected nonnegativity rows")
            }
            PerturbError::TransferInfeasible => {
                write!(f, "transferred basic solution is infeasible for the original system")
            }
            PerturbError::NotFound => write!(f, "no radius in the search schedule verified"),
            PerturbError::NotIntegral => write!(f, "system must be integral"),
            PerturbError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

impl From<OracleError> for PerturbError {
    fn from(e: OracleError) -> Self {
        PerturbError::Oracle(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    CertifiedFormula,
    Adaptive(u32),
    Manual,
}

/// A system together with its geometrically perturbed copy.
#[derive(Clone, Debug)]
pub struct PerturbedSystem {
    original: InequalitySystem,
    epsilon: Rational,
    b_eps: Vec<Rational>,
    perturbed: InequalitySystem,
    scaled: InequalitySystem,
    scale_factors: Vec<Rational>,
    provenance: Provenance,
}

impl PerturbedSystem {
    pub fn original(&self) -> &InequalitySystem {
        &self.original
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    /// The added offsets `eps^i`, one per row, strictly decreasing for
    /// `eps < 1`.
    pub fn b_eps(&self) -> &[Rational] {
        &self.b_eps
    }

    /// Same `A`, right-hand side `b + b_eps`, exact rational entries.
    pub fn perturbed(&self) -> &InequalitySystem {
        &self.perturbed
    }

    /// Integral row-scaled copy of the perturbed system.
    pub fn scaled(&self) -> &InequalitySystem {
        &self.scaled
    }

    pub fn scale_factors(&self) -> &[Rational] {
        &self.scale_factors
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// The certified radius `(3 d ||c||_1 2^{5<A,b>})^{-1}`; a zero objective is
/// treated as a unit vector so the bound stays finite.
pub fn epsilon_bound(system: &InequalitySystem, c: &[Rational]) -> Rational {
    debug_assert!(system.is_integral(), "certified bound expects integral data");
    let stats = EncodingStats::of_system(system);
    let mut c_norm = norm1(c);
    if c_norm.is_zero() {
        c_norm = Rational::one();
    }
    (rat(3) * Rational::from_integer(system.d().into()) * c_norm * stats.two_pow_times_rat(5))
        .recip()
}

/// Adds `eps^i` to row `i` (1-based exponents) and records the scaled copy.
pub fn perturb_rhs(
    system: &InequalitySystem,
    epsilon: &Rational,
    provenance: Provenance,
) -> PerturbedSystem {
    assert!(epsilon.is_positive(), "radius must be positive");
    let mut b_eps = Vec::with_capacity(system.m());
    let mut power = Rational::one();
    for _ in 0..system.m() {
        power *= epsilon;
        b_eps.push(power.clone());
    }
    let new_b: Vec<Rational> = system
        .b()
        .iter()
        .zip(&b_eps)
        .map(|(b, e)| b + e)
        .collect();
    let perturbed = InequalitySystem::new(system.a().clone(), new_b)
        .expect("perturbation preserves shape");
    let (scaled, scale_factors) = perturbed.scale_to_integrality();
    PerturbedSystem {
        original: system.clone(),
        epsilon: epsilon.clone(),
        b_eps,
        perturbed,
        scaled,
        scale_factors,
        provenance,
    }
}

/// A system `Ax <= b, x >= 0` in split form: `m` general rows followed by
/// the `d` rows `-x_j <= 0`.
#[derive(Clone, Debug)]
pub struct SplitSystem {
    system: InequalitySystem,
    general_rows: usize,
}

impl SplitSystem {
    /// Validates that the last `d` rows are exactly the nonnegativity rows.
    pub fn new(system: InequalitySystem, general_rows: usize) -> Result<Self, PerturbError> {
        let d = system.d();
        if system.m() != general_rows + d {
            return Err(PerturbError::RowsNotIdentified);
        }
        for j in 0..d {
            let row = system.row(general_rows + j);
            let expected_row = (0..d).all(|k| {
                if k == j {
                    row[k] == rat(-1)
                } else {
                    row[k].is_zero()
                }
            });
            if !expected_row || !system.rhs(general_rows + j).is_zero() {
                return Err(PerturbError::RowsNotIdentified);
            }
        }
        Ok(Self {
            system,
            general_rows,
        })
    }

    /// Appends the nonnegativity rows to a general system `Ax <= b`.
    pub fn from_general(general: &InequalitySystem) -> Self {
        let d = general.d();
        let mut sys = general.clone();
        for j in 0..d {
            let mut row = alloc::vec![Rational::zero(); d];
            row[j] = rat(-1);
            sys = sys.with_row(row, Rational::zero(), Some(alloc::format!("nonneg{j}")));
        }
        Self {
            system: sys,
            general_rows: general.m(),
        }
    }

    pub fn system(&self) -> &InequalitySystem {
        &self.system
    }

    pub fn general_rows(&self) -> usize {
        self.general_rows
    }

    pub fn d(&self) -> usize {
        self.system.d()
    }
}

/// Perturbs the split system: general row `i` gets `eps^i` and nonnegativity
/// row `j` gets `eps^{m+j}`, which is exactly the row-indexed geometric
/// perturbation of the combined system.
pub fn perturb_with_nonneg(
    split: &SplitSystem,
    epsilon: &Rational,
    provenance: Provenance,
) -> PerturbedSystem {
    perturb_rhs(split.system(), epsilon, provenance)
}

/// Maps a feasible basis of the perturbed system back to the original
/// right-hand side and verifies feasibility there exactly.
pub fn transfer_basis(
    basis_rows: &[usize],
    perturbation: &PerturbedSystem,
) -> Result<Vec<Rational>, PerturbError> {
    let original = perturbation.original();
    let sub = original.a().select_rows(basis_rows);
    let rhs: Vec<Rational> = basis_rows
        .iter()
        .map(|&i| original.b()[i].clone())
        .collect();
    let point = sub
        .solve_vec(&rhs)
        .map_err(|_| PerturbError::TransferInfeasible)?;
    if !original.is_feasible(&point) {
        return Err(PerturbError::TransferInfeasible);
    }
    Ok(point)
}

/// Verdicts of the perturbation property suite, one flag per property plus
/// the sign-pattern and objective-drift checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationReport {
    /// Feasibility is preserved in both directions.
    pub feasibility_equivalence: bool,
    /// The perturbed polyhedron is full-dimensional when nonempty.
    pub full_dimensional: bool,
    /// Every feasible basis of the perturbed system describes a vertex of
    /// the original polyhedron.
    pub bases_transfer: bool,
    /// Every original vertex keeps at least one feasible defining basis.
    pub vertices_survive: bool,
    /// An optimal perturbed basis is optimal for the original problem, and
    /// the statuses agree.
    pub optimal_basis_transfers: bool,
    /// The perturbed system is non-degenerate.
    pub nondegenerate: bool,
    /// Strict side (above/below) of every basic solution against every
    /// non-containing hyperplane is preserved.
    pub sign_pattern: bool,
    /// `|c x^U - c x^{U,eps}| < 1 / (2 Delta^2)` for every basis `U`, with
    /// `Delta` the exact maximum `|det A_U|` over bases.
    pub objective_drift: bool,
}

impl PerturbationReport {
    pub fn all_pass(&self) -> bool {
        self.feasibility_equivalence
            && self.full_dimensional
            && self.bases_transfer
            && self.vertices_survive
            && self.optimal_basis_transfers
            && self.nondegenerate
            && self.sign_pattern
            && self.objective_drift
    }
}

fn perturbed_basic_solution(
    perturbation: &PerturbedSystem,
    basis: &[usize],
) -> Option<Vec<Rational>> {
    let pert = perturbation.perturbed();
    let sub = pert.a().select_rows(basis);
    let rhs: Vec<Rational> = basis.iter().map(|&i| pert.b()[i].clone()).collect();
    sub.solve_vec(&rhs).ok()
}

/// A strictly feasible point of a nonempty non-degenerate system, stepped
/// inward from a vertex along the inward ray sum.
fn strictly_feasible_point(system: &InequalitySystem) -> Option<Vec<Rational>> {
    let records = basic_solutions(system).ok()?;
    let vertex = records.iter().find(|r| r.feasible)?;
    let basis = vertex.defining_bases.first()?;
    let sub = system.a().select_rows(basis);
    let ones = alloc::vec![Rational::one(); system.d()];
    let s: Vec<Rational> = sub.solve_vec(&ones).ok()?.into_iter().map(|v| -v).collect();
    let mut step: Option<Rational> = None;
    for i in 0..system.m() {
        let speed = dot(system.row(i), &s);
        if !speed.is_positive() {
            continue;
        }
        let slack = system.rhs(i) - dot(system.row(i), &vertex.point);
        if !slack.is_positive() {
            return None;
        }
        let t = slack / (rat(2) * speed);
        if step.as_ref().is_none_or(|cur| &t < cur) {
            step = Some(t);
        }
    }
    let t = step.unwrap_or_else(Rational::one);
    let point: Vec<Rational> = vertex
        .point
        .iter()
        .zip(&s)
        .map(|(x, dir)| x + &t * dir)
        .collect();
    system.is_strictly_feasible(&point).then_some(point)
}

/// Runs the full property suite against the enumeration oracle.
pub fn verify_perturbation_properties(
    system: &InequalitySystem,
    perturbation: &PerturbedSystem,
    c: &[Rational],
) -> Result<PerturbationReport, PerturbError> {
    let original_records = basic_solutions(system)?;
    let perturbed_records = basic_solutions(perturbation.perturbed())?;

    let original_nonempty = original_records.iter().any(|r| r.feasible);
    let perturbed_nonempty = perturbed_records.iter().any(|r| r.feasible);
    let feasibility_equivalence = original_nonempty == perturbed_nonempty;
    let full_dimensional = if perturbed_nonempty {
        strictly_feasible_point(perturbation.perturbed()).is_some()
    } else {
        true
    };

    let mut bases_transfer = true;
    for rec in perturbed_records.iter().filter(|r| r.feasible) {
        for basis in &rec.defining_bases {
            if transfer_basis(basis, perturbation).is_err() {
                bases_transfer = false;
            }
        }
    }

    let mut vertices_survive = true;
    for rec in original_records.iter().filter(|r| r.feasible) {
        let survives = rec.defining_bases.iter().any(|basis| {
            perturbed_basic_solution(perturbation, basis)
                .is_some_and(|p| perturbation.perturbed().is_feasible(&p))
        });
        if !survives {
            vertices_survive = false;
        }
    }

    let original_opt = enumerate_optimum(system, c);
    let perturbed_opt = enumerate_optimum(perturbation.perturbed(), c);
    let mut optimal_basis_transfers = original_opt.status == perturbed_opt.status;
    if optimal_basis_transfers {
        if let (Some(basis), Some(original_value)) =
            (&perturbed_opt.basis, &original_opt.objective)
        {
            match transfer_basis(basis, perturbation) {
                Ok(point) => {
                    optimal_basis_transfers = &dot(c, &point) == original_value;
                }
                Err(_) => optimal_basis_transfers = false,
            }
        }
    }

    let nondegenerate = check_nondegenerate(perturbation.perturbed())?.ok;

    // Sign pattern and objective drift quantify over every basis; the
    // records of the original system group all of them by point.
    let mut delta_max = Rational::zero();
    for rec in &original_records {
        for basis in &rec.defining_bases {
            let det = system
                .a()
                .select_rows(basis)
                .det()
                .expect("square basis")
                .abs();
            if det > delta_max {
                delta_max = det;
            }
        }
    }
    let drift_limit = (rat(2) * &delta_max * &delta_max).recip();

    let mut sign_pattern = true;
    let mut objective_drift = true;
    for rec in &original_records {
        for basis in &rec.defining_bases {
            let Some(shifted) = perturbed_basic_solution(perturbation, basis) else {
                sign_pattern = false;
                continue;
            };
            for i in 0..system.m() {
                let before = system.slack(i, &rec.point);
                if before.is_zero() {
                    continue;
                }
                let after = perturbation.perturbed().slack(i, &shifted);
                if crate::rational::sign_of(&before) != crate::rational::sign_of(&after) {
                    sign_pattern = false;
                }
            }
            let drift = (dot(c, &rec.point) - dot(c, &shifted)).abs();
            if drift >= drift_limit {
                objective_drift = false;
            }
        }
    }

    Ok(PerturbationReport {
        feasibility_equivalence,
        full_dimensional,
        bases_transfer,
        vertices_survive,
        optimal_basis_transfers,
        nondegenerate,
        sign_pattern,
        objective_drift,
    })
}

/// Exponent schedule of the downward search: `eps = 2^-k`.
const ADAPTIVE_SCHEDULE: [u32; 8] = [4, 8, 16, 32, 64, 128, 256, 512];

/// Tries `eps = 2^-k` for doubling `k` and accepts the first radius whose
/// full property suite verifies.
pub fn adaptive_epsilon(
    system: &InequalitySystem,
    c: &[Rational],
) -> Result<(Rational, PerturbationReport), PerturbError> {
    for &k in &ADAPTIVE_SCHEDULE {
        let eps = Rational::new(1.into(), crate::rational::pow2(k as u64));
        let perturbation = perturb_rhs(system, &eps, Provenance::Adaptive(k));
        let report = verify_perturbation_properties(system, &perturbation, c)?;
        if report.all_pass() {
            return Ok((eps, report));
        }
    }
    Err(PerturbError::NotFound)
}

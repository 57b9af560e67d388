//! Command implementations. Each returns a `Report`; the binary prints it
//! and maps `all_ok` to the exit code.

use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rockforge_core::construct::{
    batch_schedule_2d, batch_schedule_3d, box_inequality, crooked_prism, interior_point,
    lift_objective, monotone_path_on_graph, recenter, rock_extension, rock_extension_batched,
    Mode, RockExtension, Schedule, Sense,
};
use rockforge_core::outcome::SolveStatus;
use rockforge_core::perturb::SplitSystem;
use rockforge_core::polytope::{
    build_graph, check_epsilon_concentrated_with, check_nondegenerate, check_simplicity_with,
    check_totally_nondegenerate, diameter, enumerate_optimum, find_simplex_subsystem,
    z_increasing_eccentricity,
};
use rockforge_core::rational::{format_rational, parse_rational, rat, Rational};
use rockforge_core::solver::{solve_lp, LpForm, PivotRule, SolveConfig, Via};
use rockforge_core::system::{Basis, InequalitySystem};

use crate::formats::{load_system, parse_vector, save_system};
use crate::parallel::map_ordered;
use crate::report::{digest_of, CheckEntry, MuStepTrace, ParamTrace, Relation, Report};

fn digest_path(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(digest_of(&bytes))
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Certified => "certified",
        Mode::Practical => "practical",
    }
}

/// Certified constants double in bit length with every row; refuse inputs
/// where that is plainly hopeless.
fn gate_certified(mode: Mode, system: &InequalitySystem) -> Result<()> {
    if mode == Mode::Certified && system.m() + system.d() > 8 {
        bail!(
            "certified mode is gated to m + d <= 8 (got {} + {}); the closed-form constants grow \
             astronomically by design -- use --mode practical, which re-verifies every claim \
             exactly",
            system.m(),
            system.d()
        );
    }
    Ok(())
}

pub enum WhichCheck {
    Nondeg,
    Totnondeg,
    Simple,
    Simplexcore,
}

pub fn cmd_check(path: &Path, which: &WhichCheck) -> Result<Report> {
    let start = Instant::now();
    let system = load_system(path)?;
    let mut report = Report::new("check", digest_path(path)?, "exact");
    match which {
        WhichCheck::Nondeg => {
            let result = check_nondegenerate(&system).map_err(|e| anyhow!("{e}"))?;
            let witnesses = result
                .witnesses
                .iter()
                .map(|(p, rows)| {
                    format!(
                        "point ({}) tight on rows {rows:?}",
                        p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                    )
                })
                .collect();
            report.checks.push(CheckEntry::predicate("nondegenerate", result.ok, witnesses));
        }
        WhichCheck::Totnondeg => {
            let result = check_totally_nondegenerate(&system);
            let witnesses = result.witnesses.iter().map(|w| format!("{w:?}")).collect();
            report
                .checks
                .push(CheckEntry::predicate("totally-nondegenerate", result.ok, witnesses));
        }
        WhichCheck::Simple => {
            let graph = build_graph(&system).map_err(|e| anyhow!("{e}"))?;
            let result = check_simplicity_with(&system, &graph).map_err(|e| anyhow!("{e}"))?;
            let mut witnesses: Vec<String> =
                result.witnesses.iter().map(|(p, rows)| {
                    format!(
                        "vertex ({}) on facets {rows:?}",
                        p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                    )
                }).collect();
            for row in &result.redundant_rows {
                witnesses.push(format!("row {row} is redundant"));
            }
            report.checks.push(CheckEntry::predicate("simple", result.ok, witnesses));
        }
        WhichCheck::Simplexcore => {
            let core = find_simplex_subsystem(&system);
            let ok = core.is_some();
            let witnesses = core
                .map(|c| vec![format!("core rows {c:?}")])
                .unwrap_or_else(|| vec!["no bounded simplex subsystem".into()]);
            report.checks.push(CheckEntry::predicate("simplex-containing", ok, witnesses));
        }
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

fn param_trace(rock: &RockExtension) -> ParamTrace {
    let params = rock.params();
    ParamTrace {
        mode: Some(mode_name(params.mode).into()),
        d_factor: Some(format_rational(&params.d_factor)),
        eps_initial: Some(format_rational(&params.eps_initial)),
        mu_schedule: params
            .mu_schedule
            .iter()
            .map(|s| MuStepTrace {
                row: s.row,
                mu: format_rational(&s.mu),
                eps_after: format_rational(&s.eps_after),
            })
            .collect(),
        order: params.order.clone(),
        batch_sizes: params.batch_sizes.clone(),
        coefficients: rock.coefficients().iter().map(format_rational).collect(),
        ..ParamTrace::default()
    }
}

/// Runs the full verification battery over an extension system and appends
/// the verdict entries.
fn extension_checks(
    report: &mut Report,
    q: &InequalitySystem,
    z_row: usize,
    eps: &Rational,
) -> Result<()> {
    let m = q.m() - 1;
    let d = q.d() - 1;
    let graph = build_graph(q).map_err(|e| anyhow!("{e}"))?;

    let simplicity = check_simplicity_with(q, &graph).map_err(|e| anyhow!("{e}"))?;
    report.checks.push(CheckEntry::predicate(
        "simple",
        simplicity.ok,
        simplicity.witnesses.iter().map(|w| format!("{w:?}")).collect(),
    ));
    report.checks.push(CheckEntry::compared(
        "facet-count",
        Relation::Eq,
        (q.m() - simplicity.redundant_rows.len()).to_string(),
        (m + 1).to_string(),
    ));

    let top = graph.unique_max_vertex(d);
    match top {
        Err(_) => report
            .checks
            .push(CheckEntry::predicate("unique-top", false, vec!["tie at the maximum".into()])),
        Ok(top) => {
            let mut expected = vec![rat(0); d];
            expected.push(rat(1));
            let found = &graph.vertices()[top].point;
            report.checks.push(CheckEntry::predicate(
                "unique-top",
                found == &expected,
                vec![format!(
                    "top ({})",
                    found.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                )],
            ));

            let concentration = check_epsilon_concentrated_with(
                q,
                &graph,
                z_row,
                &vec![rat(0); d],
                &rat(1),
                eps,
            )
            .map_err(|e| anyhow!("{e}"))?;
            report.checks.push(CheckEntry::predicate(
                "concentration",
                concentration.ok,
                concentration.failures.iter().map(|f| format!("{f:?}")).collect(),
            ));

            match z_increasing_eccentricity(&graph, d, top) {
                Ok(ecc) => report.checks.push(CheckEntry::compared(
                    "increasing-eccentricity",
                    Relation::Le,
                    ecc.to_string(),
                    (m - d).to_string(),
                )),
                Err(e) => report.checks.push(CheckEntry::predicate(
                    "increasing-eccentricity",
                    false,
                    vec![format!("{e}")],
                )),
            }
        }
    }

    let diam = diameter(&graph).map_err(|e| anyhow!("{e}"))?;
    report.checks.push(CheckEntry::compared(
        "diameter",
        Relation::Le,
        diam.to_string(),
        (2 * (m - d)).to_string(),
    ));
    Ok(())
}

pub struct RockArgs {
    pub mode: Mode,
    pub batched: bool,
    pub vertex: Option<Vec<usize>>,
    pub out: Option<std::path::PathBuf>,
}

pub fn cmd_rock(path: &Path, args: &RockArgs) -> Result<Report> {
    let start = Instant::now();
    let input = load_system(path)?;
    let (system, _) = input.scale_to_integrality();
    gate_certified(args.mode, &system)?;
    let mut report = Report::new("rock", digest_path(path)?, mode_name(args.mode));

    let nondeg = check_nondegenerate(&system).map_err(|e| anyhow!("{e}"))?;
    if !nondeg.ok {
        let (p, rows) = &nondeg.witnesses[0];
        bail!(
            "input is degenerate: point ({}) lies on rows {rows:?}",
            p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        );
    }

    let basis_rows = match &args.vertex {
        Some(rows) => rows.clone(),
        None => rockforge_core::fixtures::first_feasible_basis(&system)
            .ok_or_else(|| anyhow!("no feasible vertex found; is the polytope empty?"))?,
    };
    let basis = Basis::new(&system, basis_rows).map_err(|e| anyhow!("{e}"))?;
    let o = interior_point(&system, &basis, args.mode).map_err(|e| anyhow!("{e}"))?;
    let (centered, shift) = recenter(&system, &o).map_err(|e| anyhow!("{e}"))?;

    let (working, core, boxed) = match find_simplex_subsystem(&centered) {
        Some(core) => (centered, core, None),
        None => {
            let basis = Basis::new(&centered, basis.indices().to_vec())
                .map_err(|e| anyhow!("{e}"))?;
            let boxed = box_inequality(&centered, &basis).map_err(|e| anyhow!("{e}"))?;
            let mut core = basis.indices().to_vec();
            core.push(centered.m());
            core.sort_unstable();
            (boxed.augmented.clone(), core, Some(boxed))
        }
    };

    let rock = if args.batched {
        let schedule: Schedule = match working.d() {
            2 => batch_schedule_2d(&working, &core),
            3 => batch_schedule_3d(&working, &core),
            other => bail!("batched schedules exist for dimensions 2 and 3, not {other}"),
        }
        .map_err(|e| anyhow!("{e}"))?;
        rock_extension_batched(&working, &core, &schedule, args.mode)
    } else {
        rock_extension(&working, &core, args.mode, None)
    }
    .map_err(|e| anyhow!("{e}"))?;

    let mut params = param_trace(&rock);
    if let Some(boxed) = &boxed {
        params.alpha = Some(boxed.alpha.iter().map(format_rational).collect());
        params.beta = Some(format_rational(&boxed.beta));
    }
    params.recenter_offset = Some(shift.offset.iter().map(format_rational).collect());
    params.recenter_row_factors =
        Some(shift.row_factors.iter().map(format_rational).collect());
    report.params = Some(params);
    report.notes.push(format!("core rows {core:?}"));
    report.notes.push(
        "the extension is built over the recentered base; its leading rows are that base".into(),
    );

    let eps = rock.params().eps_initial.clone();
    extension_checks(&mut report, rock.system(), rock.z_row(), &eps)?;

    if args.batched && working.d() == 2 {
        // Exact form of `diameter <= 2 log2(n - 2) + 4` for the n input
        // facets: compare 2^(diameter - 4) against (n - 2)^2.
        let n = system.m();
        let diam: usize = report
            .checks
            .iter()
            .find(|c| c.name == "diameter")
            .and_then(|c| c.measured.as_ref())
            .and_then(|s| s.parse().ok())
            .unwrap_or(0);
        let measured = if diam > 4 {
            rockforge_core::rational::pow2((diam - 4) as u64).to_string()
        } else {
            "1".into()
        };
        report.checks.push(CheckEntry::compared(
            "diameter-log-bound",
            Relation::Le,
            measured,
            ((n - 2) * (n - 2)).to_string(),
        ));
    }

    if let Some(out) = &args.out {
        save_system(rock.system(), out)?;
        report.notes.push(format!("extension written to {}", out.display()));
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_verify(
    path_q: &Path,
    base: Option<&Path>,
    eps: Option<&str>,
    top: Option<&str>,
) -> Result<Report> {
    let start = Instant::now();
    let q = load_system(path_q)?;
    let rock = RockExtension::from_system(&q).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new("verify", digest_path(path_q)?, "exact");

    if let Some(base_path) = base {
        let base_system = load_system(base_path)?;
        let matches = base_system == *rock.base();
        report.checks.push(CheckEntry::predicate(
            "base-correspondence",
            matches,
            if matches {
                vec![]
            } else {
                vec!["leading rows do not reproduce the base system".into()]
            },
        ));
    }

    let eps = match eps {
        Some(text) => parse_rational(text).map_err(anyhow::Error::msg)?,
        None => rock.params().eps_initial.clone(),
    };
    if let Some(top) = top {
        let expected = parse_vector(top)?;
        let mut canonical = vec![rat(0); q.d() - 1];
        canonical.push(rat(1));
        report.checks.push(CheckEntry::predicate(
            "requested-top",
            expected == canonical,
            vec!["only the lifted origin is supported as the top vertex".into()],
        ));
    }
    report.notes.push(format!("concentration radius {}", format_rational(&eps)));
    extension_checks(&mut report, &q, q.m() - 1, &eps)?;
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub struct PrismArgs {
    pub objective: Vec<Rational>,
    pub mode: Mode,
    pub out: Option<std::path::PathBuf>,
}

pub fn cmd_prism(path_q: &Path, args: &PrismArgs) -> Result<Report> {
    let start = Instant::now();
    let q = load_system(path_q)?;
    let rock = RockExtension::from_system(&q).map_err(|e| anyhow!("{e}"))?;
    if args.objective.len() != rock.base().d() {
        bail!(
            "objective has {} entries, base dimension is {}",
            args.objective.len(),
            rock.base().d()
        );
    }
    let mut report = Report::new("prism", digest_path(path_q)?, mode_name(args.mode));
    let prism = crooked_prism(&rock);

    let lifted_practical =
        lift_objective(&prism, &args.objective, Sense::Min, false).map_err(|e| anyhow!("{e}"))?;
    let integral_objective = args.objective.iter().all(|v| v.denom() == &1.into());
    let lifted = if args.mode == Mode::Certified {
        if !integral_objective {
            bail!("certified lift requires an integral objective; scale it first");
        }
        lift_objective(&prism, &args.objective, Sense::Min, true).map_err(|e| anyhow!("{e}"))?
    } else {
        lifted_practical.clone()
    };
    if integral_objective {
        let certified =
            lift_objective(&prism, &args.objective, Sense::Min, true).map_err(|e| anyhow!("{e}"))?;
        report.checks.push(CheckEntry::compared(
            "practical-at-most-certified-weight",
            Relation::Le,
            format_rational(&lifted_practical.c_y),
            format_rational(&certified.c_y),
        ));
    }

    let graph = build_graph(prism.system()).map_err(|e| anyhow!("{e}"))?;
    let simplicity = check_simplicity_with(prism.system(), &graph).map_err(|e| anyhow!("{e}"))?;
    report.checks.push(CheckEntry::predicate("prism-simple", simplicity.ok, vec![]));
    report.checks.push(CheckEntry::compared(
        "prism-facet-count",
        Relation::Le,
        (prism.system().m() - simplicity.redundant_rows.len()).to_string(),
        (rock.base().m() + 4).to_string(),
    ));

    let base_graph = build_graph(rock.base()).map_err(|e| anyhow!("{e}"))?;
    let bound = prism.path_bound();
    let optimum = enumerate_optimum(rock.base(), &args.objective)
        .objective
        .ok_or_else(|| anyhow!("base polytope must be bounded"))?;
    let starts: Vec<Vec<Rational>> = base_graph
        .vertices()
        .iter()
        .map(|r| r.point.clone())
        .collect();
    let results = map_ordered(starts, |point| -> Result<(usize, bool)> {
        let embedded = prism.embed_base_vertex(point);
        let idx = graph
            .find_vertex(&embedded)
            .ok_or_else(|| anyhow!("lifted start is not a vertex"))?;
        let path = monotone_path_on_graph(&graph, &lifted.c_hat, idx).map_err(|e| anyhow!("{e}"))?;
        let endpoint = path.points.last().expect("path endpoints");
        let projects = rockforge_core::rational::dot(
            &args.objective,
            &endpoint[..rock.base().d()],
        ) == optimum;
        Ok((path.len(), projects))
    });
    let mut longest = 0usize;
    let mut all_project = true;
    for result in results {
        let (len, projects) = result?;
        longest = longest.max(len);
        all_project &= projects;
    }
    report.checks.push(CheckEntry::compared(
        "monotone-path-bound",
        Relation::Le,
        longest.to_string(),
        bound.to_string(),
    ));
    report.checks.push(CheckEntry::predicate(
        "endpoints-project-to-optimum",
        all_project,
        vec![],
    ));

    let mut params = param_trace(&rock);
    params.c_y = Some(format_rational(&lifted.c_y));
    report.params = Some(params);

    if let Some(out) = &args.out {
        save_system(prism.system(), out)?;
        report.notes.push(format!("prism written to {}", out.display()));
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub struct SolveArgs {
    pub objective: Vec<Rational>,
    pub form: LpForm,
    pub mode: Mode,
    pub pivot: PivotRule,
    pub via: Via,
    pub oracle: bool,
}

pub fn cmd_solve(path: &Path, args: &SolveArgs) -> Result<Report> {
    let start = Instant::now();
    let general = load_system(path)?;
    if args.objective.len() != general.d() {
        bail!(
            "objective has {} entries, system dimension is {}",
            args.objective.len(),
            general.d()
        );
    }
    if args.mode == Mode::Certified {
        let (scaled, _) = general.scale_to_integrality();
        let rows_plus_dim = match args.form {
            LpForm::NonnegSplit => scaled.m() + 2 * scaled.d(),
            LpForm::Inequality => scaled.m() + 4 * scaled.d(),
        };
        if rows_plus_dim > 8 {
            bail!(
                "certified mode is gated to m + d <= 8 after splitting (got {rows_plus_dim}); \
                 use --mode practical"
            );
        }
    }
    let mut report = Report::new("solve", digest_path(path)?, mode_name(args.mode));
    let config = SolveConfig {
        mode: args.mode,
        pivot: args.pivot,
        via: args.via,
    };
    let (outcome, trace) =
        solve_lp(&general, &args.objective, args.form, &config).map_err(|e| anyhow!("{e}"))?;

    let status = match outcome.status {
        SolveStatus::Optimal => "optimal",
        SolveStatus::Unbounded => "unbounded",
        SolveStatus::Infeasible => "infeasible",
    };
    report.notes.push(format!("status {status}"));
    report.notes.push(format!(
        "steps: feasibility {} + main {}",
        trace.phase_one_steps, trace.main_steps
    ));
    if let Some(eps) = &trace.epsilon {
        let mut params = ParamTrace {
            epsilon: Some(format_rational(eps)),
            ..ParamTrace::default()
        };
        if let Some(beta) = &trace.box_beta {
            params.beta = Some(format_rational(beta));
        }
        report.params = Some(params);
    }
    if let Some(value) = &outcome.objective {
        report.notes.push(format!("objective {}", format_rational(value)));
    }
    if let Some(vertex) = &outcome.vertex {
        report.notes.push(format!(
            "vertex ({})",
            vertex.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        ));
    }
    if let Some(basis) = &outcome.basis {
        report.notes.push(format!("basis rows {basis:?}"));
    }
    if let Some(ray) = &outcome.ray {
        report.notes.push(format!(
            "ray ({})",
            ray.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        ));
    }

    if args.oracle {
        let comparable = match args.form {
            LpForm::NonnegSplit => SplitSystem::from_general(&general).system().clone(),
            LpForm::Inequality => {
                let mut rows = Vec::new();
                for i in 0..general.m() {
                    let mut row = general.row(i).to_vec();
                    row.extend(general.row(i).iter().map(|v| -v));
                    rows.push(row);
                }
                let doubled = InequalitySystem::new(
                    rockforge_core::matrix::RationalMatrix::from_rows(&rows),
                    general.b().to_vec(),
                )
                .map_err(|e| anyhow!("{e}"))?;
                SplitSystem::from_general(&doubled).system().clone()
            }
        };
        let mut oracle_c = args.objective.clone();
        if args.form == LpForm::Inequality {
            oracle_c.extend(args.objective.iter().map(|v| -v));
        }
        let oracle = enumerate_optimum(&comparable, &oracle_c);
        let status_match = oracle.status == outcome.status;
        let value_match = oracle.objective == outcome.objective;
        report.checks.push(CheckEntry::predicate(
            "oracle-status",
            status_match,
            vec![format!("oracle {:?}", oracle.status)],
        ));
        report.checks.push(CheckEntry::predicate(
            "oracle-value",
            value_match,
            oracle
                .objective
                .as_ref()
                .map(|v| vec![format!("oracle objective {}", format_rational(v))])
                .unwrap_or_default(),
        ));
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_export(path_q: &Path, out: &Path, digits: u32) -> Result<Report> {
    let start = Instant::now();
    let q = load_system(path_q)?;
    let text = crate::off::export_off(&q, digits)?;
    std::fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
    let mut report = Report::new("export", digest_path(path_q)?, "off");
    report
        .notes
        .push(format!("wrote {} bytes to {}", text.len(), out.display()));
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

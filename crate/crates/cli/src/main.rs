use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rockforge::commands::{
    cmd_check, cmd_export, cmd_prism, cmd_rock, cmd_solve, cmd_verify, PrismArgs, RockArgs,
    SolveArgs, WhichCheck,
};
use rockforge::formats::parse_vector;
use rockforge::report::Report;
use rockforge_core::construct::Mode;
use rockforge_core::solver::{LpForm, PivotRule, Via};

#[derive(Parser)]
#[command(
    name = "rockforge",
    version,
    about = "Exact rational polytope extensions, perturbation, and simplex runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Practical,
    Certified,
}

impl From<ModeArg> for Mode {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Practical => Mode::Practical,
            ModeArg::Certified => Mode::Certified,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Nondeg,
    Totnondeg,
    Simple,
    Simplexcore,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Nonneg,
    Ineq,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViaArg {
    Direct,
    Prism,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property checker on a system file.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        which: WhichArg,
    },
    /// Build an extension: interior point, recenter, bounding row if
    /// needed, then the coefficient schedule.
    Rock {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "practical")]
        mode: ModeArg,
        /// Group rows into disjoint-facet batches (dimensions 2 and 3).
        #[arg(long)]
        batched: bool,
        /// Start basis as comma-separated row indices; found by enumeration
        /// when absent.
        #[arg(long)]
        vertex: Option<String>,
        /// Where to write the extension system file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify an extension file against the structural claims.
    Verify {
        path: PathBuf,
        /// The base system the extension is expected to enclose.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Concentration radius as an exact rational (defaults to the
        /// canonical initial radius of the enclosed base).
        #[arg(long)]
        eps: Option<String>,
        /// Expected top vertex, comma-separated exact coordinates.
        #[arg(long, allow_hyphen_values = true)]
        top: Option<String>,
    },
    /// Build the tilted prism over an extension and verify its strictly
    /// increasing paths for an objective.
    Prism {
        path: PathBuf,
        /// Objective over the base variables, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
        #[arg(long, value_enum, default_value = "practical")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve `min c^T x` exactly through the perturb/bound/simplex pipeline.
    Solve {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
        /// nonneg: rows are `Ax <= b` with `x >= 0` implied; ineq: free
        /// variables, split internally.
        #[arg(long, value_enum, default_value = "nonneg")]
        form: FormArg,
        #[arg(long, value_enum, default_value = "practical")]
        mode: ModeArg,
        /// bland, dantzig, or random:<seed>.
        #[arg(long, default_value = "bland")]
        pivot: String,
        #[arg(long, value_enum, default_value = "direct")]
        via: ViaArg,
        /// Cross-check status and value against the enumeration oracle.
        #[arg(long)]
        oracle: bool,
        /// Seed for `--pivot random` when no explicit seed is given.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write an OFF mesh of a two- or three-dimensional system.
    Export {
        path: PathBuf,
        /// Only `off` is supported.
        #[arg(long, default_value = "off")]
        format: String,
        #[arg(long)]
        out: PathBuf,
        /// Fraction digits of the decimal vertex approximations.
        #[arg(long, default_value_t = 9)]
        digits: u32,
    },
}

fn parse_pivot(text: &str, seed: Option<u64>) -> Result<PivotRule> {
    Ok(match text {
        "bland" => PivotRule::Bland,
        "dantzig" => PivotRule::Dantzig,
        "random" => PivotRule::Random(seed.unwrap_or(0)),
        other => match other.strip_prefix("random:") {
            Some(s) => PivotRule::Random(s.parse()?),
            None => bail!("unknown pivot rule {other:?}; use bland, dantzig, or random:<seed>"),
        },
    })
}

fn run() -> Result<Report> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { path, which } => {
            let which = match which {
                WhichArg::Nondeg => WhichCheck::Nondeg,
                WhichArg::Totnondeg => WhichCheck::Totnondeg,
                WhichArg::Simple => WhichCheck::Simple,
                WhichArg::Simplexcore => WhichCheck::Simplexcore,
            };
            cmd_check(&path, &which)
        }
        Command::Rock {
            path,
            mode,
            batched,
            vertex,
            out,
        } => {
            let vertex = vertex
                .map(|text| -> Result<Vec<usize>> {
                    text.split(',')
                        .map(|s| Ok(s.trim().parse::<usize>()?))
                        .collect()
                })
                .transpose()?;
            cmd_rock(
                &path,
                &RockArgs {
                    mode: mode.into(),
                    batched,
                    vertex,
                    out,
                },
            )
        }
        Command::Verify {
            path,
            base,
            eps,
            top,
        } => cmd_verify(&path, base.as_deref(), eps.as_deref(), top.as_deref()),
        Command::Prism {
            path,
            objective,
            mode,
            out,
        } => cmd_prism(
            &path,
            &PrismArgs {
                objective: parse_vector(&objective)?,
                mode: mode.into(),
                out,
            },
        ),
        Command::Solve {
            path,
            objective,
            form,
            mode,
            pivot,
            via,
            oracle,
            seed,
        } => cmd_solve(
            &path,
            &SolveArgs {
                objective: parse_vector(&objective)?,
                form: match form {
                    FormArg::Nonneg => LpForm::NonnegSplit,
                    FormArg::Ineq => LpForm::Inequality,
                },
                mode: mode.into(),
                pivot: parse_pivot(&pivot, seed)?,
                via: match via {
                    ViaArg::Direct => Via::Direct,
                    ViaArg::Prism => Via::Prism,
                },
                oracle,
            },
        ),
        Command::Export {
            path,
            format,
            out,
            digits,
        } => {
            if format != "off" {
                bail!("unsupported export format {format:?}; only off is available");
            }
            cmd_export(&path, &out, digits)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(report) => {
            match serde_json::to_string_pretty(&report) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("error: failed to serialize report: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

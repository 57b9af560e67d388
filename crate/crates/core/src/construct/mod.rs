//! Constructions on top of the oracle: interior-point and box-row
//! augmentation, extension coefficient schedules in certified and practical
//! modes, batched variants for polygons and 3-polytopes, and the tilted
//! prism that carries monotone paths.

mod augment;
mod params;
mod prism;
mod rock;
mod schedule;

pub use augment::{box_inequality, interior_point, recenter, BoxRow, ShiftRecord};
pub use params::{a_hat, compute_params, Mode, MuStep, RockParams};
pub use prism::{
    crooked_prism, lift_objective, monotone_path, monotone_path_on_graph, LiftedObjective,
    MonotonePath, PrismExtension, Sense,
};
pub use rock::{rock_extension, rock_extension_batched, RockExtension};
pub use schedule::{batch_schedule_2d, batch_schedule_3d, facets_disjoint_in, Schedule};

use alloc::vec::Vec;
use core::fmt;

use crate::polytope::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    NotAVertex,
    NotInterior,
    NotIntegral,
    NonPositiveRhs,
    RetryExhausted { attempts: usize },
    NonPositiveCoefficient { row: usize },
    ContainmentFailed { row: usize },
    SimplexCoreInvalid,
    DimensionMismatch { expected: usize, got: usize },
    ScheduleInvalid { batch: usize, rows: (usize, usize) },
    UnknownRows(Vec<usize>),
    NoMonotonePath,
    LiftSearchExhausted,
    Oracle(OracleError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::NotAVertex => write!(f, "basis does not define a feasible vertex"),
            BuildError::NotInterior => write!(f, "point is not strictly interior"),
            BuildError::NotIntegral => write!(f, "system must be integral"),
            BuildError::NonPositiveRhs => write!(f, "right-hand side must be strictly positive"),
            BuildError::RetryExhausted { attempts } => {
                write!(f, "no non-degenerate bounding row found in {attempts} attempts")
            }
            BuildError::NonPositiveCoefficient { row } => {
                write!(f, "tilt coefficient for row {row} is not positive")
            }
            BuildError::ContainmentFailed { row } => {
                write!(f, "tangency containment fails for row {row}")
            }
            BuildError::SimplexCoreInvalid => {
                write!(f, "core rows do not bound a full-dimensional simplex")
            }
            BuildError::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            BuildError::ScheduleInvalid { batch, rows } => {
                write!(
                    f,
                    "batch {batch} lists rows {} and {} with intersecting facets",
                    rows.0, rows.1
                )
            }
            BuildError::UnknownRows(rows) => write!(f, "rows {rows:?} missing from the schedule"),
            BuildError::NoMonotonePath => write!(f, "no strictly increasing path to an optimum"),
            BuildError::LiftSearchExhausted => {
                write!(f, "doubling search for the lift constant failed")
            }
            BuildError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

impl From<OracleError> for BuildError {
    fn from(e: OracleError) -> Self {
        BuildError::Oracle(e)
    }
}

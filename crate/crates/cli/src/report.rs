//! Machine-readable verdicts. Every check entry carries the exact rational
//! evidence needed to re-validate it without rerunning the build; the
//! replay function does exactly that.

use anyhow::{bail, Result};
use rockforge_core::rational::parse_rational;
use serde::{Deserialize, Serialize};

/// How `measured` relates to `bound` when the check passes.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// measured <= bound
    Le,
    /// measured < bound
    Lt,
    /// measured == bound
    Eq,
    /// A plain predicate with no numeric evidence.
    Holds,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub ok: bool,
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
}

impl CheckEntry {
    pub fn predicate(name: &str, ok: bool, witnesses: Vec<String>) -> Self {
        Self {
            name: name.into(),
            ok,
            relation: Relation::Holds,
            measured: None,
            bound: None,
            witnesses,
        }
    }

    pub fn compared(name: &str, relation: Relation, measured: String, bound: String) -> Self {
        let ok = evaluate(relation, &measured, &bound).unwrap_or(false);
        Self {
            name: name.into(),
            ok,
            relation,
            measured: Some(measured),
            bound: Some(bound),
            witnesses: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct ParamTrace {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_initial: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub mu_schedule: Vec<MuStepTrace>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub order: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub batch_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    /// Shift applied by recentering, for mapping points back.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recenter_offset: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recenter_row_factors: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuStepTrace {
    pub row: usize,
    pub mu: String,
    pub eps_after: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub mode: String,
    pub checks: Vec<CheckEntry>,
    pub timing_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamTrace>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input_digest: String, mode: &str) -> Self {
        Self {
            command: command.into(),
            input_digest,
            mode: mode.into(),
            checks: Vec::new(),
            timing_ms: 0,
            params: None,
            notes: Vec::new(),
        }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn evaluate(relation: Relation, measured: &str, bound: &str) -> Result<bool> {
    let m = parse_rational(measured).map_err(anyhow::Error::msg)?;
    let b = parse_rational(bound).map_err(anyhow::Error::msg)?;
    Ok(match relation {
        Relation::Le => m <= b,
        Relation::Lt => m < b,
        Relation::Eq => m == b,
        Relation::Holds => bail!("nothing to evaluate"),
    })
}

/// Re-checks every numeric verdict from the report's own exact strings.
/// Returns an error naming the first entry whose stored flag disagrees with
/// its evidence.
pub fn replay(report: &Report) -> Result<()> {
    for entry in &report.checks {
        if entry.relation == Relation::Holds {
            continue;
        }
        let (Some(measured), Some(bound)) = (&entry.measured, &entry.bound) else {
            bail!("check {:?} lacks its evidence", entry.name);
        };
        let recomputed = evaluate(entry.relation, measured, bound)?;
        if recomputed != entry.ok {
            bail!(
                "check {:?} does not replay: stored ok={} but {} {:?} {} is {}",
                entry.name,
                entry.ok,
                measured,
                entry.relation,
                bound,
                recomputed
            );
        }
    }
    Ok(())
}

pub fn digest_of(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

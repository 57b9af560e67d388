//! On-disk JSON form of inequality systems. Every number is an exact string,
//! either an integer literal or `p/q`; floats never appear.

use anyhow::{bail, Context, Result};
use rockforge_core::matrix::RationalMatrix;
use rockforge_core::rational::{format_rational, parse_rational, Rational};
use rockforge_core::system::InequalitySystem;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SystemFile {
    pub d: usize,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SystemFile {
    pub fn from_system(system: &InequalitySystem) -> Self {
        Self {
            d: system.d(),
            m: system.m(),
            a: (0..system.m())
                .map(|i| system.row(i).iter().map(format_rational).collect())
                .collect(),
            b: system.b().iter().map(format_rational).collect(),
            labels: system.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_system(&self) -> Result<InequalitySystem> {
        if self.a.len() != self.m || self.b.len() != self.m {
            bail!("row count mismatch: m={} but A has {} rows and b {}", self.m, self.a.len(), self.b.len());
        }
        let mut rows = Vec::with_capacity(self.m);
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != self.d {
                bail!("row {i} has {} entries, expected d={}", row.len(), self.d);
            }
            let parsed: Vec<Rational> = row
                .iter()
                .map(|s| parse_rational(s).map_err(anyhow::Error::msg))
                .collect::<Result<_>>()
                .with_context(|| format!("row {i} of A"))?;
            rows.push(parsed);
        }
        let b: Vec<Rational> = self
            .b
            .iter()
            .map(|s| parse_rational(s).map_err(anyhow::Error::msg))
            .collect::<Result<_>>()
            .context("right-hand side b")?;
        let mut system = InequalitySystem::new(RationalMatrix::from_rows(&rows), b)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.m {
                bail!("labels length {} does not match m={}", labels.len(), self.m);
            }
            system = system.with_labels(labels.clone());
        }
        Ok(system)
    }
}

pub fn load_system(path: &std::path::Path) -> Result<InequalitySystem> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: SystemFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    file.to_system()
}

pub fn save_system(system: &InequalitySystem, path: &std::path::Path) -> Result<()> {
    let file = SystemFile::from_system(system);
    let text = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Parses a comma-separated vector of exact rationals.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|part| parse_rational(part).map_err(anyhow::Error::msg))
        .collect()
}

//! Run statistics and graph summaries, persisted as JSON.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::strong::compute_girths;

/// One build or verify run. Optional fields serialize as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub n: usize,
    pub m: usize,
    pub k: u32,
    pub algorithm: Option<String>,
    pub epsilon: Option<f64>,
    pub p_iterations: Option<u32>,
    pub spanner_edges: usize,
    pub max_stretch: Option<f64>,
    pub bound_ratio: Option<f64>,
    pub wall_time_ms: f64,
    pub seed: Option<u64>,
}

impl RunStats {
    /// Replaces non-finite optional values by `None` (JSON has no infinity).
    pub fn sanitized(mut self) -> Self {
        for x in [&mut self.epsilon, &mut self.max_stretch, &mut self.bound_ratio] {
            if x.is_some_and(|v| !v.is_finite()) {
                *x = None;
            }
        }
        if !self.wall_time_ms.is_finite() {
            self.wall_time_ms = 0.0;
        }
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.clone().sanitized())?)
    }

    /// Writes through a temporary file in the target directory and renames it
    /// into place.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_weight: f64,
    pub scc_count: usize,
    pub min_girth: Option<f64>,
    pub max_girth: Option<f64>,
}

/// Size, weight range, SCC count and finite girth range of `g`.
pub fn summarize(g: &Graph) -> GraphSummary {
    let range = compute_girths(g).finite_range();
    GraphSummary {
        n: g.n(),
        m: g.m(),
        max_weight: g.max_weight(),
        scc_count: g.scc_count(),
        min_girth: range.map(|r| r.0),
        max_girth: range.map(|r| r.1),
    }
}

//! Text formats for matchings, assignments and run summaries.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::loadbalance::{Assignment, TaskSet};

/// Machine-readable summary of one matching run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub objective: f64,
    pub cardinality: usize,
    pub rounds: u32,
    pub pushes: u64,
    pub pops: u64,
    pub time_ms: f64,
    pub init_ms: f64,
    pub threads: usize,
    pub seed: u64,
    pub input: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_round_matches: Vec<u32>,
}

/// One `u v edge_id` line per matched edge, vertices 0-based.
pub fn write_matching_tsv(graph: &Graph, edges: &[EdgeId]) -> String {
    let mut out = String::new();
    for &e in edges {
        let (u, v) = graph.endpoints(e);
        let _ = writeln!(out, "{u}\t{v}\t{e}");
    }
    out
}

/// Parses a matching file and checks each line against the graph.
pub fn parse_matching_tsv(graph: &Graph, text: &str) -> Result<Vec<EdgeId>> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(i + 1, "expected `u v edge_id`"));
        }
        let mut nums = [0u64; 3];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad integer {f:?}")))?;
        }
        let e = EdgeId::try_from(nums[2])
            .map_err(|_| Error::domain(format!("edge id {} out of range", nums[2])))?;
        graph.check_edge(e)?;
        let (u, v) = graph.endpoints(e);
        let (a, b) = (nums[0].min(nums[1]), nums[0].max(nums[1]));
        if (a, b) != (u as u64, v as u64) {
            return Err(Error::domain(format!(
                "line {}: edge {e} joins {u} and {v}, not {} and {}",
                i + 1,
                nums[0],
                nums[1]
            )));
        }
        edges.push(e);
    }
    Ok(edges)
}

/// One `task_id machine_id load` line per task.
pub fn write_assignment_tsv(tasks: &TaskSet, a: &Assignment) -> String {
    let mut out = String::new();
    for (t, (&j, &load)) in a.machine_of.iter().zip(tasks.loads()).enumerate() {
        let _ = writeln!(out, "{t}\t{j}\t{load}");
    }
    out
}

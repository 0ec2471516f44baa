//! Matrix Market coordinate files.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::Graph;

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

/// Parses a `%%MatrixMarket matrix coordinate` file into an undirected graph.
///
/// Both triangles are merged, self loops are dropped and a repeated pair
/// keeps its first weight. Pattern entries get weight 1.
pub fn parse_matrix_market(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input"))?;
    let field = parse_header(header)?;

    let mut size = None;
    for (i, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(i + 1, "size line must be `rows cols entries`"));
        }
        let mut nums = [0usize; 3];
        for (slot, p) in nums.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad size value {p:?}")))?;
        }
        size = Some((i + 1, nums));
        break;
    }
    let (size_line, [rows, cols, nnz]) =
        size.ok_or_else(|| Error::parse(1, "missing size line"))?;
    let n = rows.max(cols);

    let mut entries = Vec::with_capacity(nnz);
    for (i, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        if entries.len() == nnz {
            return Err(Error::parse(i + 1, format!("more than {nnz} entries")));
        }
        let mut parts = t.split_whitespace();
        let mut index = |bound: usize| -> Result<usize> {
            let p = parts
                .next()
                .ok_or_else(|| Error::parse(i + 1, "missing index"))?;
            let x: usize = p
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad index {p:?}")))?;
            if x == 0 || x > bound {
                return Err(Error::parse(
                    i + 1,
                    format!("index {x} outside 1..={bound}"),
                ));
            }
            Ok(x - 1)
        };
        let r = index(rows)?;
        let c = index(cols)?;
        let w = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => {
                let p = parts
                    .next()
                    .ok_or_else(|| Error::parse(i + 1, "missing value"))?;
                let w: f64 = p
                    .parse()
                    .map_err(|_| Error::parse(i + 1, format!("bad value {p:?}")))?;
                if w.is_nan() || w.is_infinite() {
                    return Err(Error::parse(i + 1, format!("non-finite value {p:?}")));
                }
                if w < 0.0 {
                    return Err(Error::domain(format!(
                        "negative weight {w} at line {}",
                        i + 1
                    )));
                }
                w
            }
        };
        entries.push((r, c, w));
    }
    if entries.len() != nnz {
        return Err(Error::parse(
            size_line,
            format!("declared {nnz} entries, found {}", entries.len()),
        ));
    }
    Graph::from_edges(n, entries)
}

fn parse_header(line: &str) -> Result<Field> {
    let tokens: Vec<String> = line
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    let bad = || Error::parse(1, format!("unsupported header {line:?}"));
    if tokens.len() != 5
        || tokens[0] != "%%matrixmarket"
        || tokens[1] != "matrix"
        || tokens[2] != "coordinate"
    {
        return Err(bad());
    }
    let field = match tokens[3].as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        _ => return Err(bad()),
    };
    match tokens[4].as_str() {
        "symmetric" | "general" => Ok(field),
        _ => Err(bad()),
    }
}

/// Writes the canonical symmetric real form: one lower-triangle entry per
/// edge, in edge id order. Each comment string becomes a `%` line.
pub fn write_matrix_market(graph: &Graph, comments: &[String]) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    for c in comments {
        let _ = writeln!(out, "% {c}");
    }
    let n = graph.num_vertices();
    let _ = writeln!(out, "{n} {n} {}", graph.num_edges());
    for (_, u, v, w) in graph.edges() {
        let _ = writeln!(out, "{} {} {}", v + 1, u + 1, w);
    }
    out
}

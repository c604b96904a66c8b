//! Plain-text edge-list format.
//!
//! ```text
//! n m
//! tail head weight    (m lines, 0-indexed vertices)
//! ```
//!
//! Tokens are whitespace separated; blank lines and lines starting with `#`
//! are skipped. Weights are written in the shortest decimal form that
//! parses back to the same `f64`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Multiply every weight by `1 / min weight` when the minimum is below 1.
    pub rescale: bool,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} '{tok}' is not a valid number")))
}

pub fn parse_graph(reader: impl BufRead, opts: ParseOptions) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut triples = Vec::new();
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if toks.len() != 2 {
                    return Err(parse_err(line_no, format!("header needs 'n m', found {} tokens", toks.len())));
                }
                header = Some((field(toks[0], line_no, "vertex count")?, field(toks[1], line_no, "edge count")?));
            }
            Some((n, _)) => {
                if toks.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        format!("edge needs 'tail head weight', found {} tokens", toks.len()),
                    ));
                }
                let tail: usize = field(toks[0], line_no, "tail")?;
                let head: usize = field(toks[1], line_no, "head")?;
                let weight: f64 = field(toks[2], line_no, "weight")?;
                for v in [tail, head] {
                    if v >= n {
                        return Err(parse_err(line_no, format!("vertex id {v} out of range (n = {n})")));
                    }
                }
                if !weight.is_finite() || weight <= 0.0 || (weight < 1.0 && !opts.rescale) {
                    return Err(parse_err(line_no, format!("weight {weight} is below 1")));
                }
                triples.push((tail, head, weight));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    if triples.len() != m {
        return Err(parse_err(last_line, format!("header declares {m} edges, found {}", triples.len())));
    }
    if opts.rescale {
        let min = triples.iter().map(|t| t.2).fold(f64::INFINITY, f64::min);
        if min < 1.0 {
            let scale = 1.0 / min;
            for t in &mut triples {
                t.2 = (t.2 * scale).max(1.0);
            }
        }
    }
    Graph::new(n, triples)
}

pub fn parse_graph_str(text: &str) -> Result<Graph> {
    parse_graph(text.as_bytes(), ParseOptions::default())
}

/// Serializes `g`, or only the edges of `subset` (keeping `n`).
pub fn write_graph(g: &Graph, subset: Option<&EdgeSet>) -> String {
    let ids: Vec<EdgeId> = match subset {
        Some(s) => s.iter().filter(|id| id.index() < g.m()).collect(),
        None => g.edge_ids().collect(),
    };
    let mut out = String::with_capacity(16 * (ids.len() + 1));
    writeln!(out, "{} {}", g.n(), ids.len()).unwrap();
    for id in ids {
        let e = g.edge(id);
        writeln!(out, "{} {} {}", e.tail, e.head, e.weight).unwrap();
    }
    out
}

/// Identifies the edges of `sub` inside `g` as a multiset of
/// `(tail, head, weight)` triples.
pub fn match_edges(g: &Graph, sub: &Graph) -> Result<EdgeSet> {
    if sub.n() != g.n() {
        return Err(Error::Containment(format!(
            "vertex counts differ ({} vs {})",
            sub.n(),
            g.n()
        )));
    }
    let mut pool: HashMap<(usize, usize, u64), VecDeque<EdgeId>> = HashMap::new();
    for (id, e) in g.edges() {
        pool.entry((e.tail, e.head, e.weight.to_bits())).or_default().push_back(id);
    }
    let mut set = EdgeSet::new();
    for (_, e) in sub.edges() {
        let id = pool
            .get_mut(&(e.tail, e.head, e.weight.to_bits()))
            .and_then(VecDeque::pop_front)
            .ok_or_else(|| Error::Containment(format!("{} -> {} (weight {})", e.tail, e.head, e.weight)))?;
        set.insert(id);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_graph_str("2 2\n0 1 2\n1 0 3\n").unwrap();
        assert_eq!((g.n(), g.m(), g.max_weight()), (2, 2, 3.0));
        let g = parse_graph_str("1 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let err = parse_graph_str("2 1\n0 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "2\n", "2 1\n0 1\n", "2 1\n0 1 x\n", "2 1\n0 1 0.5\n", "2 2\n0 1 1\n", "a b\n"] {
            assert!(parse_graph_str(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn rescale_lifts_light_weights() {
        let g = parse_graph("2 2\n0 1 0.5\n1 0 2\n".as_bytes(), ParseOptions { rescale: true }).unwrap();
        assert_eq!(g.edge(EdgeId(0)).weight, 1.0);
        assert_eq!(g.edge(EdgeId(1)).weight, 4.0);
    }

    #[test]
    fn write_examples() {
        let g = Graph::new(3, [(0, 1, 1.0), (1, 2, 1.5), (2, 0, 0.1 + 1.2)]).unwrap();
        let text = write_graph(&g, None);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(write_graph(&g, Some(&EdgeSet::new())), "3 0\n");
        let back = parse_graph_str(&text).unwrap();
        assert_eq!(back.edge(EdgeId(2)).weight, 0.1 + 1.2);
    }

    #[test]
    fn match_edges_handles_parallel_edges() {
        let g = Graph::new(2, [(0, 1, 2.0), (0, 1, 2.0), (1, 0, 1.0)]).unwrap();
        let sub = Graph::new(2, [(0, 1, 2.0), (0, 1, 2.0)]).unwrap();
        let ids: Vec<_> = match_edges(&g, &sub).unwrap().iter().collect();
        assert_eq!(ids, vec![EdgeId(0), EdgeId(1)]);
        let extra = Graph::new(2, [(0, 1, 2.0), (0, 1, 2.0), (0, 1, 2.0)]).unwrap();
        assert!(match_edges(&g, &extra).is_err());
    }
}

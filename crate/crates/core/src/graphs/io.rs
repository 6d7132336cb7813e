//! Text format for weighted graphs:
//!
//! ```text
//! n = 5
//! r = 1
//! weights = [[2], [1], [2], [3], [1]]
//! edges = [[0, 1], [1, 2], [2, 3], [3, 4]]
//! ```
//!
//! The file is a TOML document. `r` defaults to 1; when `r = 1` a weight may
//! also be written as a bare integer. `#` starts a comment.

use std::fmt::Write;

use toml::{Table, Value};

use super::WeightedGraph;
use crate::algebra::VectorVec;
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_index(v: &Value, what: &str) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        Value::Integer(_) => Err(parse_err(format!("{what} must be nonnegative"))),
        _ => Err(parse_err(format!("{what} must be an integer"))),
    }
}

/// Parses the graph text format.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| parse_err(e.message()))?;
    if let Some(k) = table
        .keys()
        .find(|k| !matches!(k.as_str(), "n" | "r" | "weights" | "edges"))
    {
        return Err(parse_err(format!("unknown field `{k}`")));
    }
    let n = as_index(
        table
            .get("n")
            .ok_or_else(|| parse_err("missing field `n`"))?,
        "n",
    )? as usize;
    let r = match table.get("r") {
        Some(v) => as_index(v, "r")? as usize,
        None => 1,
    };
    if r == 0 {
        return Err(parse_err("r must be ≥ 1"));
    }
    let raw_weights = match table.get("weights") {
        Some(Value::Array(a)) => a.as_slice(),
        Some(_) => return Err(parse_err("`weights` must be a list")),
        None if n == 0 => &[],
        None => return Err(parse_err("missing field `weights`")),
    };
    if raw_weights.len() != n {
        return Err(parse_err(format!(
            "expected {n} weights, found {}",
            raw_weights.len()
        )));
    }
    let mut weights = Vec::with_capacity(n);
    for (v, w) in raw_weights.iter().enumerate() {
        let coords: Vec<i64> = match w {
            Value::Integer(i) if r == 1 => vec![*i],
            Value::Array(a) => a
                .iter()
                .map(|c| {
                    c.as_integer()
                        .ok_or_else(|| parse_err("weights must be integers"))
                })
                .collect::<Result<_>>()?,
            _ => return Err(parse_err(format!("weight of vertex {v} must be a list"))),
        };
        if coords.len() != r {
            return Err(Error::WidthMismatch {
                expected: r,
                found: coords.len(),
            });
        }
        if coords.iter().any(|&c| c < 1) {
            return Err(Error::NonPositiveWeight(v));
        }
        let coords = coords
            .into_iter()
            .map(|c| u32::try_from(c).map_err(|_| parse_err("weight too large")))
            .collect::<Result<Vec<u32>>>()?;
        weights.push(VectorVec::new(coords));
    }
    let raw_edges = match table.get("edges") {
        Some(Value::Array(a)) => a.as_slice(),
        Some(_) => return Err(parse_err("`edges` must be a list")),
        None => &[],
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for e in raw_edges {
        match e {
            Value::Array(pair) if pair.len() == 2 => {
                let a = as_index(&pair[0], "edge endpoint")? as usize;
                let b = as_index(&pair[1], "edge endpoint")? as usize;
                edges.push((a, b));
            }
            _ => return Err(parse_err("each edge must be a pair [u, v]")),
        }
    }
    WeightedGraph::new(r, weights, edges)
}

/// Canonical serialization; `parse_graph(serialize_graph(g)) == g`.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", g.n());
    let _ = writeln!(s, "r = {}", g.r());
    let ws: Vec<String> = g
        .weights()
        .iter()
        .map(|w| {
            let c: Vec<String> = w.coords().iter().map(u32::to_string).collect();
            format!("[{}]", c.join(", "))
        })
        .collect();
    let _ = writeln!(s, "weights = [{}]", ws.join(", "));
    let es: Vec<String> = g
        .edges()
        .iter()
        .map(|(a, b)| format!("[{a}, {b}]"))
        .collect();
    let _ = writeln!(s, "edges = [{}]", es.join(", "));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const T1: &str = include_str!("../../../../data/t1.graph");
    const T2: &str = include_str!("../../../../data/t2.graph");

    #[test]
    fn bundled_counterexample_trees() {
        assert_eq!(
            parse_graph(T1).unwrap(),
            WeightedGraph::path(&[2, 1, 2, 3, 1])
        );
        assert_eq!(
            parse_graph(T2).unwrap(),
            WeightedGraph::path(&[2, 3, 1, 2, 1])
        );
    }

    #[test]
    fn empty_graph() {
        let g = parse_graph("n = 0\n").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn scalar_shorthand() {
        let g = parse_graph("n = 2\nweights = [1, 2]\nedges = [[1, 0]]").unwrap();
        assert_eq!(
            g,
            WeightedGraph::with_scalar_weights(&[1, 2], &[(0, 1)]).unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_graph("n = 1\nweights = [[1]]\nedges = [[0, 0]]"),
            Err(Error::Loop(0))
        );
        assert!(matches!(
            parse_graph("n = 2\nweights = [[1]]"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_graph("n = = 2"), Err(Error::Parse(_))));
        assert_eq!(
            parse_graph("n = 1\nweights = [[0]]"),
            Err(Error::NonPositiveWeight(0))
        );
        assert!(matches!(
            parse_graph("n = 2\nr = 2\nweights = [[1, 1], [1]]"),
            Err(Error::WidthMismatch { .. })
        ));
        assert_eq!(
            parse_graph("n = 2\nweights = [1, 1]\nedges = [[0, 1], [1, 0]]"),
            Err(Error::MultiEdge(0, 1))
        );
        assert!(matches!(
            parse_graph("n = 1\nweights = [1]\ncolor = 3"),
            Err(Error::Parse(_))
        ));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..8, r in 1usize..3, seed in any::<u64>()) {
            let g = crate::graphs::random_forest(n, 5, r, seed).unwrap();
            let text = serialize_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_graph(&back), text);
        }
    }
}

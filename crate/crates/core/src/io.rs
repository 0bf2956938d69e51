//! Text and JSON graph formats.
//!
//! Text: a header `n m`, then `m` lines `D u v` (directed) or `U u v`
//! (undirected). Lines starting with `#` are comments. A graph with any `U`
//! line is mixed. Optionally the line after the header may be
//! `labels l0 l1 ... l(n-1)`, after which edge endpoints may be given by label.
//!
//! JSON: `{"n":3,"directed":[[0,1]],"undirected":[[1,2]]}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, MixedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Directed(DiGraph),
    Mixed(MixedGraph),
}

impl ParsedGraph {
    pub fn into_mixed(self) -> MixedGraph {
        match self {
            ParsedGraph::Directed(g) => MixedGraph::from_digraph(&g),
            ParsedGraph::Mixed(g) => g,
        }
    }

    /// Fails on graphs with undirected edges.
    pub fn into_directed(self) -> Result<DiGraph> {
        match self {
            ParsedGraph::Directed(g) => Ok(g),
            ParsedGraph::Mixed(_) => Err(Error::Precondition(
                "operation needs a directed graph".into(),
            )),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return parse_json(trimmed);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(perr(hl, "header must be `n m`"));
    }
    let n: usize = nums[0].parse().map_err(|_| perr(hl, "bad vertex count"))?;
    let m: usize = nums[1].parse().map_err(|_| perr(hl, "bad edge count"))?;

    let mut labels: Option<HashMap<String, usize>> = None;
    let mut directed = Vec::new();
    let mut undirected = Vec::new();
    let mut count = 0;
    let mut first = true;
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if first && toks[0] == "labels" {
            first = false;
            if toks.len() != n + 1 {
                return Err(perr(ln, format!("expected {n} labels")));
            }
            let mut map = HashMap::new();
            for (i, t) in toks[1..].iter().enumerate() {
                if map.insert(t.to_string(), i).is_some() {
                    return Err(perr(ln, format!("duplicate label {t}")));
                }
            }
            labels = Some(map);
            continue;
        }
        first = false;
        if toks.len() != 3 {
            return Err(perr(ln, "edge line must be `D u v` or `U u v`"));
        }
        let vertex = |t: &str| -> Result<usize> {
            let v = match labels.as_ref().and_then(|m| m.get(t)) {
                Some(&v) => v,
                None => t
                    .parse::<usize>()
                    .map_err(|_| perr(ln, format!("bad vertex `{t}`")))?,
            };
            if v >= n {
                return Err(perr(ln, format!("vertex {v} out of range (n={n})")));
            }
            Ok(v)
        };
        let (a, b) = (vertex(toks[1])?, vertex(toks[2])?);
        match toks[0] {
            "D" | "d" => directed.push((a, b)),
            "U" | "u" => undirected.push((a, b)),
            t => return Err(perr(ln, format!("unknown edge kind `{t}`"))),
        }
        count += 1;
    }
    if count != m {
        return Err(perr(
            hl,
            format!("header announces {m} edges, found {count}"),
        ));
    }
    Ok(if undirected.is_empty() {
        ParsedGraph::Directed(DiGraph { n, edges: directed })
    } else {
        ParsedGraph::Mixed(MixedGraph {
            n,
            directed,
            undirected,
        })
    })
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    #[serde(default)]
    directed: Vec<(usize, usize)>,
    #[serde(default)]
    undirected: Vec<(usize, usize)>,
}

fn parse_json(text: &str) -> Result<ParsedGraph> {
    let j: JsonGraph = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    for &(a, b) in j.directed.iter().chain(&j.undirected) {
        if a >= j.n || b >= j.n {
            return Err(perr(1, format!("edge ({a},{b}) out of range (n={})", j.n)));
        }
    }
    Ok(if j.undirected.is_empty() {
        ParsedGraph::Directed(DiGraph {
            n: j.n,
            edges: j.directed,
        })
    } else {
        ParsedGraph::Mixed(MixedGraph {
            n: j.n,
            directed: j.directed,
            undirected: j.undirected,
        })
    })
}

/// Canonical text: directed lines first, then undirected, each in stored order.
pub fn render_mixed(g: &MixedGraph) -> String {
    let mut s = format!("{} {}\n", g.n, g.m());
    for &(a, b) in &g.directed {
        s.push_str(&format!("D {a} {b}\n"));
    }
    for &(a, b) in &g.undirected {
        s.push_str(&format!("U {a} {b}\n"));
    }
    s
}

pub fn render_digraph(g: &DiGraph) -> String {
    render_mixed(&MixedGraph::from_digraph(g))
}

pub fn render_graph(g: &ParsedGraph) -> String {
    match g {
        ParsedGraph::Directed(d) => render_digraph(d),
        ParsedGraph::Mixed(m) => render_mixed(m),
    }
}

pub fn to_json(g: &MixedGraph) -> String {
    serde_json::to_string(&JsonGraph {
        n: g.n,
        directed: g.directed.clone(),
        undirected: g.undirected.clone(),
    })
    .expect("serializable")
}

//! Brute-force reference implementations of every notion computed by the
//! library. They only use reachability searches written here, never the
//! fast paths, and are meant for small graphs.

use crate::error::{Error, Result};
pub use crate::graph::FailureSet;
use crate::graph::{DiGraph, MixedGraph, UGraph};
use crate::partition::Partition;

/// Vertices reachable from `from` over the given arcs, skipping `dead` vertices.
fn reach(n: usize, arcs: &[(usize, usize)], from: usize, dead: Option<usize>) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in arcs {
        adj[a].push(b);
    }
    let mut seen = vec![false; n];
    if Some(from) == dead {
        return seen;
    }
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] && Some(w) != dead {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn without(edges: &[(usize, usize)], skip: usize) -> Vec<(usize, usize)> {
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &e)| e)
        .collect()
}

fn both_ways(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect()
}

/// Full reachability matrix.
fn closure(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    (0..n).map(|v| reach(n, arcs, v, None)).collect()
}

/// Classes of an equivalence given as a predicate; fails if the relation is
/// not transitive on this instance.
fn classes(vertices: &[usize], related: impl Fn(usize, usize) -> bool) -> Result<Partition> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in vertices {
        match blocks.iter_mut().find(|b| related(b[0], v)) {
            Some(b) => b.push(v),
            None => blocks.push(vec![v]),
        }
    }
    for b in &blocks {
        for &x in b {
            for &y in b {
                if !related(x, y) {
                    return Err(Error::Invariant(format!(
                        "relation not transitive: {x} and {y}"
                    )));
                }
            }
        }
    }
    Ok(Partition::from_blocks(blocks))
}

fn mutual(m: &[Vec<bool>]) -> impl Fn(usize, usize) -> bool + '_ {
    move |a, b| m[a][b] && m[b][a]
}

pub fn oracle_scc(g: &DiGraph) -> Partition {
    let c = closure(g.n, &g.edges);
    let vs: Vec<usize> = (0..g.n).collect();
    classes(&vs, mutual(&c)).expect("mutual reachability is an equivalence")
}

/// 2-edge strongly connected components: refine the SCCs by the SCCs of
/// `g - e` for every edge `e`.
pub fn oracle_2escc(g: &DiGraph) -> Partition {
    let mut p = oracle_scc(g);
    for e in 0..g.m() {
        let h = DiGraph {
            n: g.n,
            edges: without(&g.edges, e),
        };
        p = p.refine(&oracle_scc(&h)).expect("same ground set");
    }
    p
}

/// Connected after deleting the edges in `skip` (vertex pair relation).
fn ucon(n: usize, edges: &[(usize, usize)], skip: &[usize]) -> Vec<Vec<bool>> {
    let kept: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &e)| e)
        .collect();
    closure(n, &both_ways(&kept))
}

/// Twinless SCCs via the 2-edge-connectivity characterization, with every
/// ingredient recomputed by brute force.
pub fn oracle_tscc(g: &DiGraph) -> Partition {
    let c = closure(g.n, &g.edges);
    let mut simple: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != b && c[a][b] && c[b][a])
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    simple.sort_unstable();
    simple.dedup();
    let mut same = ucon(g.n, &simple, &[]);
    for e in 0..simple.len() {
        let r = ucon(g.n, &simple, &[e]);
        for a in 0..g.n {
            for b in 0..g.n {
                same[a][b] &= r[a][b];
            }
        }
    }
    let vs: Vec<usize> = (0..g.n).collect();
    classes(&vs, |a, b| same[a][b]).expect("2-edge connectivity is an equivalence")
}

pub const TSCC_TWIN_LIMIT: usize = 12;

/// Twinless SCCs straight from the definition: `u` and `v` are related iff
/// some twin-free set of edges strongly connects them. A twin-free set never
/// uses both directions between a vertex pair, so it suffices to try every
/// choice of one direction per pair that has edges both ways.
pub fn oracle_tscc_definitional(g: &DiGraph) -> Result<Partition> {
    let mut pairs: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .filter(|&(a, b)| g.edges.contains(&(a, b)) && g.edges.contains(&(b, a)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.len() > TSCC_TWIN_LIMIT {
        return Err(Error::OracleLimit(format!(
            "{} twin pairs (limit {TSCC_TWIN_LIMIT})",
            pairs.len()
        )));
    }
    let n = g.n;
    let mut rel = vec![vec![false; n]; n];
    for mask in 0u32..(1 << pairs.len()) {
        let arcs: Vec<(usize, usize)> = g
            .edges
            .iter()
            .copied()
            .filter(
                |&(a, b)| match pairs.iter().position(|&p| p == (a.min(b), a.max(b))) {
                    None => true,
                    Some(i) => (mask >> i & 1 == 1) == (a < b),
                },
            )
            .collect();
        let c = closure(n, &arcs);
        for a in 0..n {
            for b in 0..n {
                rel[a][b] |= c[a][b] && c[b][a];
            }
        }
    }
    let vs: Vec<usize> = (0..n).collect();
    classes(&vs, |a, b| rel[a][b])
}

/// 2-edge twinless SCCs: refine the twinless SCCs by those of `g - e` for
/// every edge `e`.
pub fn oracle_2etscc(g: &DiGraph) -> Partition {
    let mut p = oracle_tscc(g);
    for e in 0..g.m() {
        let h = DiGraph {
            n: g.n,
            edges: without(&g.edges, e),
        };
        p = p.refine(&oracle_tscc(&h)).expect("same ground set");
    }
    p
}

/// Same refinement restricted to the given deletions.
pub fn oracle_2etscc_over(g: &DiGraph, deletions: &[usize]) -> Partition {
    let mut p = oracle_tscc(g);
    for &e in deletions {
        let h = DiGraph {
            n: g.n,
            edges: without(&g.edges, e),
        };
        p = p.refine(&oracle_tscc(&h)).expect("same ground set");
    }
    p
}

/// Immediate dominators: `u` dominates `v` iff `v` is unreachable from `s`
/// once `u` is removed. Returns `None` for unreachable vertices.
pub fn oracle_idom(g: &DiGraph, s: usize) -> Vec<Option<usize>> {
    let n = g.n;
    let base = reach(n, &g.edges, s, None);
    let mut dom = vec![vec![false; n]; n];
    for u in 0..n {
        let r = reach(n, &g.edges, s, Some(u));
        for v in 0..n {
            dom[u][v] = base[v] && (u == v || u == s || !r[v]);
        }
    }
    (0..n)
        .map(|v| {
            if !base[v] {
                return None;
            }
            if v == s {
                return Some(s);
            }
            let cands: Vec<usize> = (0..n).filter(|&u| u != v && dom[u][v]).collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&o| dom[o][c]))
        })
        .collect()
}

pub fn oracle_flow_bridges(g: &DiGraph, s: usize) -> Vec<usize> {
    let base = reach(g.n, &g.edges, s, None);
    (0..g.m())
        .filter(|&e| {
            let r = reach(g.n, &without(&g.edges, e), s, None);
            (0..g.n).any(|v| base[v] && !r[v])
        })
        .collect()
}

fn strongly_connected(n: usize, arcs: &[(usize, usize)]) -> bool {
    n == 0 || {
        let f = reach(n, arcs, 0, None);
        let rev: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (b, a)).collect();
        let r = reach(n, &rev, 0, None);
        f.iter().chain(&r).all(|&x| x)
    }
}

pub fn oracle_strong_bridges(g: &DiGraph) -> Vec<usize> {
    (0..g.m())
        .filter(|&e| !strongly_connected(g.n, &without(&g.edges, e)))
        .collect()
}

/// Edges whose deletion increases the number of twinless SCCs.
pub fn oracle_twinless_strong_bridges(g: &DiGraph) -> Vec<usize> {
    let k = oracle_tscc(g).len();
    (0..g.m())
        .filter(|&e| {
            oracle_tscc(&DiGraph {
                n: g.n,
                edges: without(&g.edges, e),
            })
            .len()
                > k
        })
        .collect()
}

/// 2-edge-connected classes: connected after deleting any one edge.
pub fn oracle_2ecc(g: &UGraph) -> Partition {
    edge_deletion_classes(g, 1)
}

/// 3-edge-connected classes: connected after deleting any two edges.
pub fn oracle_3ecc(g: &UGraph) -> Partition {
    edge_deletion_classes(g, 2)
}

fn edge_deletion_classes(g: &UGraph, k: usize) -> Partition {
    let m = g.m();
    let mut same = ucon(g.n, &g.edges, &[]);
    let mut apply = |skip: &[usize]| {
        let r = ucon(g.n, &g.edges, skip);
        for a in 0..g.n {
            for b in 0..g.n {
                same[a][b] &= r[a][b];
            }
        }
    };
    for e in 0..m {
        apply(&[e]);
        if k == 2 {
            for f in e + 1..m {
                apply(&[e, f]);
            }
        }
    }
    let vs: Vec<usize> = (0..g.n).collect();
    classes(&vs, |a, b| same[a][b]).expect("equivalence")
}

/// Bridges: edges whose deletion disconnects their endpoints.
pub fn oracle_bridges(g: &UGraph) -> Vec<usize> {
    (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edges[e];
            a != b && !ucon(g.n, &g.edges, &[e])[a][b]
        })
        .collect()
}

/// Articulation points: vertices whose removal disconnects two of their neighbours.
pub fn oracle_articulation(g: &UGraph) -> Vec<usize> {
    let arcs = both_ways(&g.edges);
    (0..g.n)
        .filter(|&x| {
            let nb: Vec<usize> = g
                .edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == x && b != x {
                        Some(b)
                    } else if b == x && a != x {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            nb.iter().any(|&p| {
                let r = reach(g.n, &arcs, p, Some(x));
                nb.iter().any(|&q| !r[q])
            })
        })
        .collect()
}

/// Blocks as edge classes: two edges share a block iff no single vertex
/// removal separates them (an edge is represented by its endpoint that
/// survives the removal).
pub fn oracle_blocks(g: &UGraph) -> Partition {
    let arcs = both_ways(&g.edges);
    let m = g.m();
    let real: Vec<usize> = (0..m).filter(|&e| g.edges[e].0 != g.edges[e].1).collect();
    let reach_wo: Vec<Vec<Vec<bool>>> = (0..g.n)
        .map(|x| (0..g.n).map(|v| reach(g.n, &arcs, v, Some(x))).collect())
        .collect();
    let related = |e: usize, f: usize| {
        let (a, b) = g.edges[e];
        let (c, d) = g.edges[f];
        (0..g.n).all(|x| {
            let p = if a != x { a } else { b };
            let q = if c != x { c } else { d };
            reach_wo[x][p][q]
        })
    };
    classes(&real, related).expect("block relation is an equivalence")
}

/// Marked vertex-edge blocks: unmarked `u`,`w` are related iff they stay
/// connected in `g - {v, e}` for every marked `v` and every edge `e` (and in
/// `g` itself).
pub fn oracle_mveb(g: &UGraph, marked: &[usize]) -> Partition {
    let n = g.n;
    let arcs = both_ways(&g.edges);
    let mut same = closure(n, &arcs);
    for &v in marked {
        for e in 0..g.m() {
            let kept = both_ways(&without(&g.edges, e));
            for a in 0..n {
                let r = reach(n, &kept, a, Some(v));
                for b in 0..n {
                    same[a][b] &= r[b];
                }
            }
        }
    }
    let ordinary: Vec<usize> = (0..n).filter(|v| !marked.contains(v)).collect();
    classes(&ordinary, |a, b| same[a][b]).expect("equivalence")
}

pub const ORIENT_UNDIRECTED_LIMIT: usize = 12;

/// Pairs strongly connected by at least one orientation of `g`'s undirected edges.
fn co_orientable(
    n: usize,
    directed: &[(usize, usize)],
    undirected: &[(usize, usize)],
) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    for mask in 0u32..(1 << undirected.len()) {
        let mut arcs = directed.to_vec();
        for (i, &(a, b)) in undirected.iter().enumerate() {
            arcs.push(if mask >> i & 1 == 1 { (b, a) } else { (a, b) });
        }
        let c = closure(n, &arcs);
        for a in 0..n {
            for b in 0..n {
                rel[a][b] |= c[a][b] && c[b][a];
            }
        }
    }
    rel
}

/// Maximal vertex sets such that, for every failing edge `e` (and for no
/// failure), some orientation of `g - e` strongly connects each pair.
pub fn oracle_edge_resilient(g: &MixedGraph, failures: FailureSet) -> Result<Partition> {
    if g.undirected.len() > ORIENT_UNDIRECTED_LIMIT {
        return Err(Error::OracleLimit(format!(
            "{} undirected edges (limit {ORIENT_UNDIRECTED_LIMIT})",
            g.undirected.len()
        )));
    }
    let n = g.n;
    let mut same = co_orientable(n, &g.directed, &g.undirected);
    let mut apply = |d: &[(usize, usize)], u: &[(usize, usize)]| {
        let r = co_orientable(n, d, u);
        for a in 0..n {
            for b in 0..n {
                same[a][b] &= r[a][b];
            }
        }
    };
    if failures.directed_fail() {
        for e in 0..g.directed.len() {
            apply(&without(&g.directed, e), &g.undirected);
        }
    }
    if failures.undirected_fail() {
        for e in 0..g.undirected.len() {
            apply(&g.directed, &without(&g.undirected, e));
        }
    }
    let vs: Vec<usize> = (0..n).collect();
    classes(&vs, |a, b| same[a][b])
}

/// Strongly orientable blocks: pairs connected by a common orientation.
pub fn oracle_orientable(g: &MixedGraph) -> Result<Partition> {
    oracle_edge_resilient(g, FailureSet::None)
}

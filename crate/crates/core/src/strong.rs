//! Strongly connected and twinless strongly connected components.

use crate::dominators::strong_bridges;
use crate::error::Result;
use crate::graph::{sort_by_pair, underlying, Csr, DiGraph, EdgeSet, UGraph};
use crate::partition::Partition;
use crate::undirected::{bridges_2ecc, three_ecc_cactus};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccResult {
    pub partition: Partition,
    /// Component index (into `partition.blocks()`) of every vertex.
    pub comp: Vec<usize>,
    /// Condensation edges between distinct components, deduplicated.
    pub dag_edges: Vec<(usize, usize)>,
    /// Components in topological order of the condensation.
    pub topo: Vec<usize>,
}

/// Component id per vertex (Tarjan, iterative); ids come out in reverse
/// topological order of the condensation.
pub(crate) fn scc_labels(out: &Csr) -> (Vec<usize>, usize) {
    let n = out.n();
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut comp = vec![NONE; n];
    let mut it = vec![0usize; n];
    let mut stack = Vec::new();
    let mut call = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        call.push(root);
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        while let Some(&v) = call.last() {
            if it[v] < out.degree(v) {
                let w = out.nbr(v, it[v]).0;
                it[v] += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    call.push(w);
                } else if comp[w] == NONE {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&p) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    (comp, ncomp)
}

pub fn scc(g: &DiGraph) -> SccResult {
    let (raw, k) = scc_labels(&g.out_csr());
    let partition = Partition::from_dense_labels(&raw);
    let comp = partition.labels(g.n);
    // Tarjan emits sinks first.
    let mut rename = vec![0usize; k];
    for v in 0..g.n {
        rename[raw[v]] = comp[v];
    }
    let topo: Vec<usize> = (0..k).rev().map(|c| rename[c]).collect();
    let mut dag_edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(a, b)| (comp[a], comp[b]))
        .filter(|(a, b)| a != b)
        .collect();
    dag_edges.sort_unstable();
    dag_edges.dedup();
    SccResult {
        partition,
        comp,
        dag_edges,
        topo,
    }
}

pub fn scc_partition(g: &DiGraph) -> Partition {
    Partition::from_dense_labels(&scc_labels(&g.out_csr()).0)
}

pub fn is_strongly_connected(g: &DiGraph) -> bool {
    g.n <= 1 || scc_labels(&g.out_csr()).1 == 1
}

/// Twinless strongly connected components: per SCC, the 2-edge-connected
/// blocks of the simple underlying graph of the induced subgraph.
pub fn tscc(g: &DiGraph) -> Partition {
    let (comp, _) = scc_labels(&g.out_csr());
    tscc_with_scc(g, &comp)
}

pub(crate) fn tscc_with_scc(g: &DiGraph, comp: &[usize]) -> Partition {
    let mut pairs: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != b && comp[a] == comp[b])
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    sort_by_pair(g.n, &mut pairs, |&p| p);
    pairs.dedup();
    bridges_2ecc(&UGraph::from_edges(g.n, pairs)).1
}

pub fn is_twinless_strongly_connected(g: &DiGraph) -> bool {
    tscc(g).len() <= 1
}

/// Edges whose deletion increases the number of twinless SCCs.
pub fn twinless_strong_bridges(g: &DiGraph) -> Result<EdgeSet> {
    let mut out = Vec::new();
    let big: Vec<Vec<usize>> = tscc(g)
        .into_blocks()
        .into_iter()
        .filter(|b| b.len() >= 3)
        .collect();
    for (h, ids) in g.induced_blocks(&big) {
        out.extend(twinless_strong_bridges_tsc(&h)?.iter().map(|e| ids[e]));
    }
    Ok(EdgeSet::from_unsorted(out))
}

/// `E_t` of a twinless strongly connected graph: its strong bridges plus every
/// edge without a twin or parallel copy whose undirected image lies on a
/// 2-edge cut of the underlying graph.
pub fn twinless_strong_bridges_tsc(h: &DiGraph) -> Result<EdgeSet> {
    let es = strong_bridges(h)?;
    let u = underlying(h);
    let cactus = three_ecc_cactus(&u.as_ugraph())?;
    let mut out = es.0.clone();
    for ce in &cactus.edges {
        let origins = u.origins(ce.origin);
        if origins.len() == 1 {
            out.push(origins[0]);
        }
    }
    Ok(EdgeSet::from_unsorted(out))
}

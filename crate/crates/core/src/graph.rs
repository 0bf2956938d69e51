//! Directed, mixed and undirected multigraphs over dense vertex ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed multigraph. Edge ids are positions in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DiGraph {
    pub fn new(n: usize) -> Self {
        DiGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::Precondition(format!(
                    "edge {i} ({a},{b}) out of range for n={n}"
                )));
            }
        }
        Ok(DiGraph { n, edges })
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.n && b < self.n);
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn reversed(&self) -> DiGraph {
        DiGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// Graph without edge `e`; ids above `e` shift down by one.
    pub fn without_edge(&self, e: usize) -> DiGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        DiGraph { n: self.n, edges }
    }

    /// Out-adjacency skipping self-loops.
    pub fn out_csr(&self) -> Csr {
        Csr::build(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != b)
                .map(|(i, &(a, b))| (a, b, i)),
        )
    }

    /// In-adjacency skipping self-loops; entries hold the tail.
    pub fn in_csr(&self) -> Csr {
        Csr::build(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != b)
                .map(|(i, &(a, b))| (b, a, i)),
        )
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    /// Returns the graph and the original id of every kept edge.
    pub fn induced(&self, vertices: &[usize]) -> (DiGraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = DiGraph::new(vertices.len());
        let mut ids = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if local[a] != usize::MAX && local[b] != usize::MAX {
                g.edges.push((local[a], local[b]));
                ids.push(i);
            }
        }
        (g, ids)
    }

    /// Induced subgraphs of disjoint vertex blocks in one pass, each
    /// relabelled in block order, with original edge ids.
    pub fn induced_blocks(&self, blocks: &[Vec<usize>]) -> Vec<(DiGraph, Vec<usize>)> {
        let mut which = vec![usize::MAX; self.n];
        let mut local = vec![usize::MAX; self.n];
        let mut out: Vec<(DiGraph, Vec<usize>)> = Vec::with_capacity(blocks.len());
        for (bi, b) in blocks.iter().enumerate() {
            for (i, &v) in b.iter().enumerate() {
                which[v] = bi;
                local[v] = i;
            }
            out.push((DiGraph::new(b.len()), Vec::new()));
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let bi = which[a];
            if bi != usize::MAX && bi == which[b] {
                out[bi].0.edges.push((local[a], local[b]));
                out[bi].1.push(i);
            }
        }
        out
    }
}

/// Graph with both directed and undirected edges over one vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MixedGraph {
    pub n: usize,
    pub directed: Vec<(usize, usize)>,
    /// Stored endpoint order is kept as given.
    pub undirected: Vec<(usize, usize)>,
}

impl MixedGraph {
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            directed: Vec::new(),
            undirected: Vec::new(),
        }
    }

    pub fn from_digraph(g: &DiGraph) -> Self {
        MixedGraph {
            n: g.n,
            directed: g.edges.clone(),
            undirected: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.directed.len() + self.undirected.len()
    }
}

/// Which edges of a mixed graph may fail in resilience questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureSet {
    None,
    Directed,
    Undirected,
    Both,
}

impl FailureSet {
    pub fn directed_fail(self) -> bool {
        matches!(self, FailureSet::Directed | FailureSet::Both)
    }

    pub fn undirected_fail(self) -> bool {
        matches!(self, FailureSet::Undirected | FailureSet::Both)
    }
}

/// Undirected multigraph. Edge ids are positions in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UGraph {
    pub fn new(n: usize) -> Self {
        UGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(a, b)| a < n && b < n));
        UGraph { n, edges }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Symmetric adjacency skipping self-loops; every edge appears at both ends.
    pub fn csr(&self) -> Csr {
        Csr::build(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != b)
                .flat_map(|(i, &(a, b))| [(a, b, i), (b, a, i)]),
        )
    }
}

/// Compressed adjacency: for vertex `v`, entries `off[v]..off[v+1]` hold
/// `(neighbour, edge id)`. Stored as `u32` to halve the memory traffic of the
/// hot traversals.
#[derive(Debug, Clone)]
pub struct Csr {
    off: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl Csr {
    pub fn build(n: usize, entries: impl Iterator<Item = (usize, usize, usize)> + Clone) -> Csr {
        assert!(
            n < u32::MAX as usize,
            "graph too large for 32-bit adjacency"
        );
        let mut off = vec![0u32; n + 1];
        let mut count = 0usize;
        for (a, _, _) in entries.clone() {
            off[a + 1] += 1;
            count += 1;
        }
        assert!(
            count < u32::MAX as usize,
            "graph too large for 32-bit adjacency"
        );
        for i in 0..n {
            off[i + 1] += off[i];
        }
        let mut pos = off.clone();
        let mut adj = vec![(0, 0); count];
        for (a, b, e) in entries {
            assert!(
                e < u32::MAX as usize,
                "edge id too large for 32-bit adjacency"
            );
            adj[pos[a] as usize] = (b as u32, e as u32);
            pos[a] += 1;
        }
        Csr { off, adj }
    }

    #[inline]
    pub fn nbrs(
        &self,
        v: usize,
    ) -> impl DoubleEndedIterator<Item = (usize, usize)> + ExactSizeIterator + '_ {
        self.adj[self.off[v] as usize..self.off[v + 1] as usize]
            .iter()
            .map(|&(w, e)| (w as usize, e as usize))
    }

    /// The `i`-th entry of `v`.
    #[inline]
    pub fn nbr(&self, v: usize, i: usize) -> (usize, usize) {
        let (w, e) = self.adj[self.off[v] as usize + i];
        (w as usize, e as usize)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        (self.off[v + 1] - self.off[v]) as usize
    }

    pub fn n(&self) -> usize {
        self.off.len() - 1
    }
}

/// Sorted set of edge ids of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeSet(pub Vec<usize>);

impl EdgeSet {
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        EdgeSet(ids)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }
}

/// The simple undirected graph underlying a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraphView {
    pub n: usize,
    /// Endpoints with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Directed edge ids collapsing onto undirected edge `i` are
    /// `origin_ids[origin_off[i]..origin_off[i + 1]]`, ascending.
    origin_off: Vec<usize>,
    origin_ids: Vec<usize>,
}

impl UGraphView {
    pub fn as_ugraph(&self) -> UGraph {
        UGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    /// Directed edge ids collapsing onto undirected edge `i`, ascending.
    pub fn origins(&self, i: usize) -> &[usize] {
        &self.origin_ids[self.origin_off[i]..self.origin_off[i + 1]]
    }

    /// Index of the undirected edge `{a,b}`.
    pub fn find(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }
}

/// Simple underlying graph; self-loops are dropped.
pub fn underlying(g: &DiGraph) -> UGraphView {
    let mut keyed: Vec<(usize, usize, usize)> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a != b)
        .map(|(i, &(a, b))| (a.min(b), a.max(b), i))
        .collect();
    sort_by_pair(g.n, &mut keyed, |k| (k.0, k.1));
    let mut edges = Vec::new();
    let mut origin_off = vec![0];
    let mut origin_ids = Vec::with_capacity(keyed.len());
    for (a, b, i) in keyed {
        if edges.last() != Some(&(a, b)) {
            if !edges.is_empty() {
                origin_off.push(origin_ids.len());
            }
            edges.push((a, b));
        }
        origin_ids.push(i);
    }
    if !edges.is_empty() {
        origin_off.push(origin_ids.len());
    }
    UGraphView {
        n: g.n,
        edges,
        origin_off,
        origin_ids,
    }
}

/// Stable sort of `items` by a key `(a, b)` with `a, b < n`: two counting
/// passes, O(n + len). Falls back to a comparison sort when `n` dwarfs the
/// input.
pub(crate) fn sort_by_pair<T: Copy>(
    n: usize,
    items: &mut Vec<T>,
    key: impl Fn(&T) -> (usize, usize),
) {
    if items.len() < 64 || n > 4 * items.len() {
        items.sort_by_key(|t| key(t));
        return;
    }
    let mut buf = items.clone();
    let mut count = vec![0usize; n + 1];
    for pass in [1, 0] {
        count.iter_mut().for_each(|c| *c = 0);
        let k = |t: &T| if pass == 1 { key(t).1 } else { key(t).0 };
        for t in items.iter() {
            count[k(t) + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        for t in items.iter() {
            let c = &mut count[k(t)];
            buf[*c] = *t;
            *c += 1;
        }
        std::mem::swap(items, &mut buf);
    }
}

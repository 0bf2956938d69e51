//! Seeded random graph generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{DiGraph, MixedGraph, UGraph};

/// `m` uniform random edges over `n` vertices; parallel edges allowed, no loops.
pub fn uniform<R: Rng>(rng: &mut R, n: usize, m: usize) -> DiGraph {
    let mut g = DiGraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        g.add_edge(a, b);
    }
    g
}

/// Strongly connected: a random Hamiltonian cycle plus `m - n` uniform edges.
pub fn strongly_connected<R: Rng>(rng: &mut R, n: usize, m: usize) -> DiGraph {
    let mut g = DiGraph::new(n);
    if n < 2 {
        return g;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for i in 0..n {
        g.add_edge(perm[i], perm[(i + 1) % n]);
    }
    let extra = uniform(rng, n, m.saturating_sub(n));
    g.edges.extend(extra.edges);
    g.edges.shuffle(rng);
    g
}

/// Strongly connected with many strong bridges: small strongly connected
/// blobs (often with twin edges) joined in a ring by single edges, plus a few
/// chords. Produces about `m` edges.
pub fn bridge_heavy<R: Rng>(rng: &mut R, n: usize, m: usize) -> DiGraph {
    let mut g = DiGraph::new(n);
    if n < 2 {
        return g;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut blobs: Vec<&[usize]> = Vec::new();
    let mut i = 0;
    while i < n {
        let k = rng.gen_range(1..=4).min(n - i);
        blobs.push(&perm[i..i + k]);
        i += k;
    }
    for b in &blobs {
        if b.len() >= 2 {
            for j in 0..b.len() {
                g.add_edge(b[j], b[(j + 1) % b.len()]);
                if rng.gen_bool(0.5) {
                    g.add_edge(b[(j + 1) % b.len()], b[j]);
                }
            }
        }
    }
    if blobs.len() >= 2 {
        for j in 0..blobs.len() {
            let a = *blobs[j].choose(rng).expect("nonempty");
            let b = *blobs[(j + 1) % blobs.len()].choose(rng).expect("nonempty");
            g.add_edge(a, b);
        }
    }
    while g.m() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            g.add_edge(a, b);
        }
    }
    g.edges.shuffle(rng);
    g
}

/// Random mixed graph with `d` directed and `u` undirected edges, no loops.
pub fn mixed<R: Rng>(rng: &mut R, n: usize, d: usize, u: usize) -> MixedGraph {
    let mut g = MixedGraph::new(n);
    if n < 2 {
        return g;
    }
    g.directed = uniform(rng, n, d).edges;
    g.undirected = uniform(rng, n, u).edges;
    g
}

/// Random biconnected undirected multigraph: a cycle on `n0` vertices plus
/// `ears` random ears of length up to three, never exceeding `max_n` vertices.
pub fn biconnected_graph<R: Rng>(rng: &mut R, n0: usize, ears: usize, max_n: usize) -> UGraph {
    let n0 = n0.max(3);
    let mut g = UGraph::new(n0);
    for i in 0..n0 {
        g.add_edge(i, (i + 1) % n0);
    }
    for _ in 0..ears {
        let a = rng.gen_range(0..g.n);
        let b = rng.gen_range(0..g.n);
        if a == b {
            continue;
        }
        let len = rng.gen_range(0..3).min(max_n.saturating_sub(g.n));
        let mut prev = a;
        for _ in 0..len {
            let v = g.n;
            g.n += 1;
            g.add_edge(prev, v);
            prev = v;
        }
        g.add_edge(prev, b);
    }
    g
}

//! Reductions from orientation problems on mixed graphs to twinless strong
//! connectivity.
//!
//! Directed edges are split through a fresh auxiliary vertex so that they can
//! never form a twin pair with an orientation of an undirected edge. An
//! undirected edge becomes either a twin pair (one direction per twinless
//! subgraph, exactly the choice of an orientation) or, when its failure must be
//! modelled, a seven-edge gadget whose critical edge stands for the edge itself.
//! Ordinary vertices keep their ids `0..n` in every reduced graph.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{DiGraph, FailureSet, MixedGraph};
use crate::partition::Partition;
use crate::pipeline::two_etscc;
use crate::strong::tscc;

/// Auxiliary vertices of an undirected-edge gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GadgetVertex {
    Z,
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexRole {
    Ordinary,
    SplitAuxiliary,
    GadgetAuxiliary(GadgetVertex),
}

/// Where a reduced-graph edge comes from. `copy` is 1 for the extra copy that
/// makes a non-failing edge immune to single deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeOrigin {
    /// Half 1 is `(x, z)`, half 2 is `(z, y)` for directed edge `edge = (x, y)`.
    Directed { edge: usize, half: u8, copy: u8 },
    /// Orientation `(x, y)` (forward) or `(y, x)` of undirected edge `{x, y}`.
    Twin {
        edge: usize,
        forward: bool,
        copy: u8,
    },
    /// Edge `which` (0..7) of the gadget of undirected edge `edge`.
    Gadget { edge: usize, which: u8, copy: u8 },
}

/// Gadget edges over `(x, y, z, u, v)`; index 3, `(u, v)`, is critical.
pub const GADGET: [(usize, usize); 7] = [(0, 2), (2, 0), (2, 3), (3, 4), (4, 1), (1, 3), (4, 2)];
pub const GADGET_CRITICAL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedGraph {
    pub graph: DiGraph,
    pub role: Vec<VertexRole>,
    pub origin: Vec<EdgeOrigin>,
    /// Critical gadget edge of every undirected edge that got a gadget.
    pub critical: Vec<Option<usize>>,
    /// Number of ordinary vertices.
    pub ordinary: usize,
}

impl ReducedGraph {
    fn new(g: &MixedGraph) -> Self {
        ReducedGraph {
            graph: DiGraph::new(g.n),
            role: vec![VertexRole::Ordinary; g.n],
            origin: Vec::new(),
            critical: vec![None; g.undirected.len()],
            ordinary: g.n,
        }
    }

    fn vertex(&mut self, role: VertexRole) -> usize {
        self.role.push(role);
        self.graph.n += 1;
        self.graph.n - 1
    }

    fn edge(&mut self, a: usize, b: usize, origin: EdgeOrigin) -> usize {
        self.origin.push(origin);
        self.graph.add_edge(a, b)
    }

    fn split(&mut self, edge: usize, (x, y): (usize, usize), copies: u8) {
        let z = self.vertex(VertexRole::SplitAuxiliary);
        for copy in 0..copies {
            self.edge(
                x,
                z,
                EdgeOrigin::Directed {
                    edge,
                    half: 1,
                    copy,
                },
            );
            self.edge(
                z,
                y,
                EdgeOrigin::Directed {
                    edge,
                    half: 2,
                    copy,
                },
            );
        }
    }

    fn twin(&mut self, edge: usize, (x, y): (usize, usize)) {
        self.edge(
            x,
            y,
            EdgeOrigin::Twin {
                edge,
                forward: true,
                copy: 0,
            },
        );
        self.edge(
            y,
            x,
            EdgeOrigin::Twin {
                edge,
                forward: false,
                copy: 0,
            },
        );
    }

    /// With two copies no single deletion inside the gadget matters, and no
    /// critical edge is recorded.
    fn gadget(&mut self, edge: usize, (x, y): (usize, usize), copies: u8) {
        let z = self.vertex(VertexRole::GadgetAuxiliary(GadgetVertex::Z));
        let u = self.vertex(VertexRole::GadgetAuxiliary(GadgetVertex::U));
        let v = self.vertex(VertexRole::GadgetAuxiliary(GadgetVertex::V));
        let ids = [x, y, z, u, v];
        for copy in 0..copies {
            for (which, &(a, b)) in GADGET.iter().enumerate() {
                let id = self.edge(
                    ids[a],
                    ids[b],
                    EdgeOrigin::Gadget {
                        edge,
                        which: which as u8,
                        copy,
                    },
                );
                if which == GADGET_CRITICAL && copies == 1 {
                    self.critical[edge] = Some(id);
                }
            }
        }
    }

    /// Restriction of a partition of the reduced graph to the ordinary vertices.
    pub fn restrict(&self, p: &Partition) -> Partition {
        p.restrict(|v| v < self.ordinary)
    }
}

/// Directed edges split, undirected edges replaced by twin pairs.
pub fn split_and_twin(g: &MixedGraph) -> ReducedGraph {
    let mut r = ReducedGraph::new(g);
    for (i, &e) in g.directed.iter().enumerate() {
        r.split(i, e, 1);
    }
    for (i, &e) in g.undirected.iter().enumerate() {
        r.twin(i, e);
    }
    r
}

/// Directed edges split, undirected edges replaced by gadgets in their stored
/// endpoint order.
pub fn split_and_gadget(g: &MixedGraph) -> ReducedGraph {
    reduce_for_failures(g, FailureSet::Both)
}

/// Reduction where only the edges in `failures` can be deleted: every edge
/// is split or gets a gadget, and the pieces of non-failing edges carry two
/// parallel copies of each edge, which twinless connectivity cannot tell
/// apart from one.
pub fn reduce_for_failures(g: &MixedGraph, failures: FailureSet) -> ReducedGraph {
    let mut r = ReducedGraph::new(g);
    let dcopies = if failures.directed_fail() { 1 } else { 2 };
    let ucopies = if failures.undirected_fail() { 1 } else { 2 };
    for (i, &e) in g.directed.iter().enumerate() {
        r.split(i, e, dcopies);
    }
    for (i, &e) in g.undirected.iter().enumerate() {
        r.gadget(i, e, ucopies);
    }
    r
}

/// Maximal vertex sets that one orientation of the undirected edges makes
/// strongly connected.
///
/// Twin pairs between the same two vertices are interchangeable, so parallel
/// undirected edges could not be oriented against each other. A bundle of two
/// or more of them is best oriented both ways and enters as a directed pair.
pub fn strongly_orientable_blocks(g: &MixedGraph) -> Partition {
    let r = split_and_twin(&bundles_as_directed(g));
    r.restrict(&tscc(&r.graph))
}

fn bundles_as_directed(g: &MixedGraph) -> MixedGraph {
    let key = |&(a, b): &(usize, usize)| (a.min(b), a.max(b));
    let mut keys: Vec<(usize, usize)> = g
        .undirected
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(key)
        .collect();
    keys.sort_unstable();
    let multi = |k: &(usize, usize)| {
        let i = keys.partition_point(|x| x < k);
        keys.get(i + 1) == Some(k)
    };
    let mut out = MixedGraph {
        n: g.n,
        directed: g.directed.clone(),
        undirected: Vec::new(),
    };
    let mut done: Vec<(usize, usize)> = Vec::new();
    for e in &g.undirected {
        let k = key(e);
        if e.0 == e.1 || !multi(&k) {
            out.undirected.push(*e);
        } else if let Err(i) = done.binary_search(&k) {
            done.insert(i, k);
            out.directed.extend([(k.0, k.1), (k.1, k.0)]);
        }
    }
    out
}

/// Maximal vertex sets that stay strongly orientable after the deletion of
/// any single edge.
pub fn edge_resilient_blocks(g: &MixedGraph) -> Result<Partition> {
    edge_resilient_blocks_for(g, FailureSet::Both)
}

/// [`edge_resilient_blocks`] where only the edges in `failures` can fail.
/// With [`FailureSet::None`] these are the strongly orientable blocks.
pub fn edge_resilient_blocks_for(g: &MixedGraph, failures: FailureSet) -> Result<Partition> {
    if failures == FailureSet::None {
        return Ok(strongly_orientable_blocks(g));
    }
    let r = reduce_for_failures(g, failures);
    Ok(r.restrict(&two_etscc(&r.graph)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed(n: usize, d: &[(usize, usize)], u: &[(usize, usize)]) -> MixedGraph {
        MixedGraph {
            n,
            directed: d.to_vec(),
            undirected: u.to_vec(),
        }
    }

    #[test]
    fn reductions_have_the_expected_shape() {
        let r = split_and_twin(&mixed(2, &[(0, 1)], &[]));
        assert_eq!(r.graph.edges, vec![(0, 2), (2, 1)]);
        let r = split_and_twin(&mixed(2, &[], &[(0, 1)]));
        assert_eq!(r.graph.edges, vec![(0, 1), (1, 0)]);
        assert_eq!(split_and_twin(&MixedGraph::new(0)).graph, DiGraph::new(0));
        let r = split_and_gadget(&mixed(2, &[], &[(0, 1)]));
        assert_eq!(r.graph.n, 5);
        assert_eq!(
            r.graph.edges,
            vec![(0, 2), (2, 0), (2, 3), (3, 4), (4, 1), (1, 3), (4, 2)]
        );
        assert_eq!(r.critical, vec![Some(3)]);
        let r = split_and_gadget(&mixed(3, &[(0, 1), (1, 2)], &[(2, 0), (0, 1), (1, 2)]));
        assert_eq!(r.graph.n, 3 + 2 + 9);
        assert_eq!(r.graph.m(), 2 * 2 + 7 * 3);
    }

    #[test]
    fn orientable_examples() {
        let tri = mixed(3, &[], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(strongly_orientable_blocks(&tri), Partition::single(0..3));
        let path = mixed(3, &[], &[(0, 1), (1, 2)]);
        assert_eq!(
            strongly_orientable_blocks(&path),
            Partition::singletons(0..3)
        );
        assert_eq!(
            strongly_orientable_blocks(&mixed(2, &[(0, 1)], &[(0, 1)])),
            Partition::single(0..2)
        );
        assert_eq!(
            strongly_orientable_blocks(&mixed(2, &[], &[(0, 1)])),
            Partition::singletons(0..2)
        );
    }

    #[test]
    fn resilient_examples() {
        let par = mixed(2, &[], &[(0, 1); 3]);
        assert_eq!(
            edge_resilient_blocks(&par).unwrap(),
            Partition::single(0..2)
        );
        let tri = mixed(3, &[], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            edge_resilient_blocks(&tri).unwrap(),
            Partition::singletons(0..3)
        );
        let bik = mixed(2, &[(0, 1), (1, 0)], &[(0, 1)]);
        assert_eq!(
            edge_resilient_blocks(&bik).unwrap(),
            Partition::single(0..2)
        );
        assert_eq!(
            edge_resilient_blocks(&mixed(2, &[], &[(0, 1)])).unwrap(),
            Partition::singletons(0..2)
        );
    }
}

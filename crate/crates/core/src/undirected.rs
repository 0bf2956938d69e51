//! Undirected decompositions: components, bridges, blocks and the cactus of
//! 3-edge-connected classes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::graph::{sort_by_pair, Csr, EdgeSet, UGraph};
use crate::partition::Partition;
use crate::uf::UnionFind;

/// Connected component label of every vertex (self-loops ignored).
pub fn component_labels(g: &UGraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.n);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    dense_roots(&mut uf)
}

/// Dense labels numbered by first occurrence in vertex order.
pub(crate) fn dense_roots(uf: &mut UnionFind) -> Vec<usize> {
    let n = uf.len();
    let mut id = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let r = uf.find(v);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out[v] = id[r];
    }
    out
}

pub fn connected_components(g: &UGraph) -> Partition {
    Partition::from_dense_labels(&component_labels(g))
}

/// Iterative DFS over an undirected CSR that never re-enters the tree edge it
/// arrived by (by edge id, so parallel edges count as back edges).
struct Dfs {
    pre: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
}

const NONE: usize = usize::MAX;

fn dfs_forest(csr: &Csr) -> Dfs {
    let n = csr.n();
    let mut pre = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![NONE; n];
    let mut parent_edge = vec![NONE; n];
    let mut it = vec![0usize; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if pre[root] != NONE {
            continue;
        }
        pre[root] = order.len();
        order.push(root);
        stack.push(root);
        while let Some(&v) = stack.last() {
            if it[v] < csr.degree(v) {
                let (w, e) = csr.nbr(v, it[v]);
                it[v] += 1;
                if pre[w] == NONE {
                    pre[w] = order.len();
                    order.push(w);
                    parent[w] = v;
                    parent_edge[w] = e;
                    stack.push(w);
                }
            } else {
                stack.pop();
            }
        }
    }
    Dfs {
        pre,
        order,
        parent,
        parent_edge,
    }
}

/// Bridges and the 2-edge-connected partition.
pub fn bridges_2ecc(g: &UGraph) -> (EdgeSet, Partition) {
    let csr = g.csr();
    let d = dfs_forest(&csr);
    let n = g.n;
    let mut low = d.pre.clone();
    for &v in d.order.iter().rev() {
        for (w, e) in csr.nbrs(v) {
            if e == d.parent_edge[v] {
                continue;
            }
            if d.parent[w] == v && d.parent_edge[w] == e {
                low[v] = low[v].min(low[w]);
            } else {
                low[v] = low[v].min(d.pre[w]);
            }
        }
    }
    let mut bridges = Vec::new();
    let mut uf = UnionFind::new(n);
    for v in 0..n {
        if d.parent[v] == NONE {
            continue;
        }
        if low[v] == d.pre[v] {
            bridges.push(d.parent_edge[v]);
        } else {
            uf.union(v, d.parent[v]);
        }
    }
    (
        EdgeSet::from_unsorted(bridges),
        Partition::from_dense_labels(&dense_roots(&mut uf)),
    )
}

/// Biconnected components (blocks) of an undirected multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForest {
    /// Edge ids of each block; self-loops belong to no block.
    pub blocks: Vec<Vec<usize>>,
    /// Vertices of each block, ascending.
    pub block_vertices: Vec<Vec<usize>>,
    /// Articulation points, ascending.
    pub articulation: Vec<usize>,
}

impl BlockForest {
    /// Block indices containing each vertex.
    pub fn incidence(&self, n: usize) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); n];
        for (b, vs) in self.block_vertices.iter().enumerate() {
            for &v in vs {
                inc[v].push(b);
            }
        }
        inc
    }
}

pub fn biconnected(g: &UGraph) -> BlockForest {
    let csr = g.csr();
    let n = g.n;
    let mut pre = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut parent_edge = vec![NONE; n];
    let mut it = vec![0usize; n];
    let mut counter = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut seen_edge = vec![false; g.m()];
    let mut blocks = Vec::new();
    let mut is_art = vec![false; n];
    for root in 0..n {
        if pre[root] != NONE {
            continue;
        }
        pre[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        let mut root_children = 0;
        while let Some(&v) = stack.last() {
            if it[v] < csr.degree(v) {
                let (w, e) = csr.nbr(v, it[v]);
                it[v] += 1;
                if e == parent_edge[v] || seen_edge[e] {
                    continue;
                }
                seen_edge[e] = true;
                estack.push(e);
                if pre[w] == NONE {
                    pre[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    parent_edge[w] = e;
                    stack.push(w);
                } else {
                    low[v] = low[v].min(pre[w]);
                }
            } else {
                stack.pop();
                if let Some(&p) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= pre[p] {
                        if p == root {
                            root_children += 1;
                        } else {
                            is_art[p] = true;
                        }
                        let pe = parent_edge[v];
                        let mut blk = Vec::new();
                        while let Some(e) = estack.pop() {
                            blk.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        blocks.push(blk);
                    }
                }
            }
        }
        if root_children >= 2 {
            is_art[root] = true;
        }
    }
    // Ascending edge and vertex lists come from scanning edges and vertices
    // in id order; blocks are then numbered by minimum vertex, then minimum
    // edge.
    let k = blocks.len();
    let mut block_of = vec![NONE; g.m()];
    for (b, es) in blocks.iter().enumerate() {
        for &e in es {
            block_of[e] = b;
        }
    }
    let mut edges_of: Vec<Vec<usize>> = blocks
        .iter()
        .map(|es| Vec::with_capacity(es.len()))
        .collect();
    for (e, &b) in block_of.iter().enumerate() {
        if b != NONE {
            edges_of[b].push(e);
        }
    }
    let mut verts_of: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        for (_, e) in csr.nbrs(v) {
            let b = block_of[e];
            if b != NONE && verts_of[b].last() != Some(&v) {
                verts_of[b].push(v);
            }
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    sort_by_pair(n.max(g.m()), &mut order, |&b| {
        (verts_of[b][0], edges_of[b][0])
    });
    let blocks = order
        .iter()
        .map(|&b| std::mem::take(&mut edges_of[b]))
        .collect();
    let block_vertices = order
        .iter()
        .map(|&b| std::mem::take(&mut verts_of[b]))
        .collect();
    BlockForest {
        blocks,
        block_vertices,
        articulation: (0..n).filter(|&v| is_art[v]).collect(),
    }
}

/// Cactus of the 3-edge-connected classes of a 2-edge-connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cactus {
    pub node_count: usize,
    /// Cactus node of every input vertex; nodes numbered by minimum member.
    pub phi: Vec<usize>,
    pub edges: Vec<CactusEdge>,
    /// Cactus edge indices of every cycle, in cyclic order.
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CactusEdge {
    pub a: usize,
    pub b: usize,
    pub cycle: usize,
    /// Edge id in the input graph.
    pub origin: usize,
}

impl Cactus {
    pub fn classes(&self) -> Partition {
        Partition::from_dense_labels(&self.phi)
    }
}

const CACTUS_SEED: u64 = 0x3ecc_5eed;

/// Builds the cactus from 2-edge cuts found by cycle-space labels: in a
/// 2-edge-connected graph, two edges form a cut iff the sets of DFS back edges
/// covering them coincide. Labels are random 128-bit XOR sums drawn from a
/// fixed seed, so the output is deterministic.
/// Sorts tuples whose first field is a uniformly random label: buckets by
/// the top bits of the label (expected O(1) per bucket), then sorts each
/// bucket. Same order as a full sort, in expected linear time.
fn sort_by_random_label(keyed: &mut Vec<(u128, usize, usize)>) {
    let bits = usize::BITS - keyed.len().leading_zeros();
    if bits < 6 {
        keyed.sort_unstable();
        return;
    }
    let bucket = |k: &(u128, usize, usize)| (k.0 >> (128 - bits)) as usize;
    let mut start = vec![0usize; (1 << bits) + 1];
    for k in keyed.iter() {
        start[bucket(k) + 1] += 1;
    }
    for i in 0..1 << bits {
        start[i + 1] += start[i];
    }
    let mut out = vec![(0, 0, 0); keyed.len()];
    let mut at = start.clone();
    for k in keyed.iter() {
        let b = bucket(k);
        out[at[b]] = *k;
        at[b] += 1;
    }
    for w in start.windows(2) {
        out[w[0]..w[1]].sort_unstable();
    }
    *keyed = out;
}

pub fn three_ecc_cactus(g: &UGraph) -> Result<Cactus> {
    let n = g.n;
    if n == 0 {
        return precondition("empty graph");
    }
    let csr = g.csr();
    let d = dfs_forest(&csr);
    if d.order.len() != n || (1..n).any(|v| d.parent[d.order[v]] == NONE) {
        return precondition("graph is not connected");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CACTUS_SEED);
    let m = g.m();
    let mut label = vec![0u128; m];
    let mut acc = vec![0u128; n];
    let mut tree_child = vec![NONE; m];
    for v in 0..n {
        if d.parent_edge[v] != NONE {
            tree_child[d.parent_edge[v]] = v;
        }
    }
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if a == b || tree_child[e] != NONE {
            continue;
        }
        let r: u128 = rng.gen();
        label[e] = r;
        acc[a] ^= r;
        acc[b] ^= r;
    }
    let mut depth = vec![0usize; n];
    for &v in &d.order {
        if d.parent[v] != NONE {
            depth[v] = depth[d.parent[v]] + 1;
        }
    }
    for &v in d.order.iter().rev() {
        if d.parent[v] != NONE {
            let e = d.parent_edge[v];
            label[e] = acc[v];
            if acc[v] == 0 {
                return precondition("graph has a bridge");
            }
            let p = d.parent[v];
            acc[p] ^= acc[v];
        }
    }
    // Group non-loop edges by label.
    let mut keyed: Vec<(u128, usize, usize)> = (0..m)
        .filter(|&e| g.edges[e].0 != g.edges[e].1)
        .map(|e| {
            let key = if tree_child[e] != NONE {
                depth[tree_child[e]]
            } else {
                usize::MAX
            };
            (label[e], key, e)
        })
        .collect();
    sort_by_random_label(&mut keyed);
    let mut uf = UnionFind::new(n);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 {
            j += 1;
        }
        let class: Vec<usize> = keyed[i..j].iter().map(|k| k.2).collect();
        if class.len() == 1 {
            let (a, b) = g.edges[class[0]];
            uf.union(a, b);
        } else {
            // Tree edges come first ordered by depth, the back edge (if any) last.
            let tree: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&e| tree_child[e] != NONE)
                .collect();
            let back: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&e| tree_child[e] == NONE)
                .collect();
            if back.len() > 1 || tree.is_empty() {
                return Err(crate::error::Error::Invariant(
                    "cut class with several back edges".into(),
                ));
            }
            let top = |e: usize| d.parent[tree_child[e]];
            let bottom = |e: usize| tree_child[e];
            for w in tree.windows(2) {
                uf.union(bottom(w[0]), top(w[1]));
            }
            let first = tree[0];
            let last = *tree.last().expect("nonempty");
            match back.first() {
                None => {
                    uf.union(top(first), bottom(last));
                }
                Some(&f) => {
                    let (a, b) = g.edges[f];
                    let (lo, hi) = if depth[a] > depth[b] { (a, b) } else { (b, a) };
                    uf.union(bottom(last), lo);
                    uf.union(top(first), hi);
                }
            }
            classes.push(class);
        }
        i = j;
    }
    let phi = dense_roots(&mut uf);
    let node_count = phi.iter().copied().max().map_or(0, |x| x + 1);
    // Cycles numbered by their smallest origin edge.
    classes.sort_unstable_by_key(|c| *c.iter().min().expect("nonempty"));
    let mut edges = Vec::new();
    let mut cycles = Vec::new();
    for (cid, class) in classes.iter().enumerate() {
        let mut cyc = Vec::new();
        for &e in class {
            let (a, b) = g.edges[e];
            cyc.push(edges.len());
            edges.push(CactusEdge {
                a: phi[a],
                b: phi[b],
                cycle: cid,
                origin: e,
            });
        }
        cycles.push(cyc);
    }
    Ok(Cactus {
        node_count,
        phi,
        edges,
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, e: &[(usize, usize)]) -> UGraph {
        UGraph::from_edges(n, e.to_vec())
    }

    #[test]
    fn bridges_examples() {
        let (b, p) = bridges_2ecc(&ug(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(b.is_empty());
        assert_eq!(p.len(), 1);
        let (b, p) = bridges_2ecc(&ug(3, &[(0, 1), (1, 2)]));
        assert_eq!(b.0, vec![0, 1]);
        assert_eq!(p.len(), 3);
        // Parallel edges are not bridges.
        let (b, _) = bridges_2ecc(&ug(2, &[(0, 1), (1, 0)]));
        assert!(b.is_empty());
        // Two triangles sharing vertex 2 stay one 2-edge-connected block.
        let (b, p) = bridges_2ecc(&ug(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]));
        assert!(b.is_empty());
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn biconnected_examples() {
        let f = biconnected(&ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        assert_eq!(f.blocks.len(), 1);
        assert!(f.articulation.is_empty());
        let f = biconnected(&ug(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]));
        assert_eq!(f.blocks.len(), 2);
        assert_eq!(f.articulation, vec![2]);
        let f = biconnected(&ug(2, &[(0, 1)]));
        assert_eq!(f.blocks, vec![vec![0]]);
    }

    #[test]
    fn cactus_examples() {
        let k4 = ug(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = three_ecc_cactus(&k4).unwrap();
        assert_eq!((c.node_count, c.edges.len()), (1, 0));
        let c4 = ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = three_ecc_cactus(&c4).unwrap();
        assert_eq!((c.node_count, c.cycles.len(), c.cycles[0].len()), (4, 1, 4));
        let tt = ug(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let c = three_ecc_cactus(&tt).unwrap();
        assert_eq!((c.node_count, c.cycles.len()), (5, 2));
        let pair = ug(2, &[(0, 1), (0, 1)]);
        let c = three_ecc_cactus(&pair).unwrap();
        assert_eq!((c.node_count, c.cycles.len(), c.edges.len()), (2, 1, 2));
        assert_eq!(three_ecc_cactus(&ug(1, &[])).unwrap().node_count, 1);
        assert!(three_ecc_cactus(&ug(2, &[(0, 1)])).is_err());
    }

    #[test]
    fn cactus_theta_graph() {
        // u=0, v=1 joined by three paths of length two: {0,1} is one class.
        let g = ug(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let c = three_ecc_cactus(&g).unwrap();
        assert_eq!(
            c.classes(),
            Partition::from_blocks(vec![vec![0, 1], vec![2], vec![3], vec![4]])
        );
        assert_eq!(c.cycles.len(), 3);
    }
}

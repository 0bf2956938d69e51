//! Marked vertex-edge blocks: maximal sets of unmarked vertices that stay
//! connected after deleting any marked vertex together with any edge.

use crate::error::{precondition, Result};
use crate::graph::UGraph;
use crate::partition::Partition;
use crate::spqr::{spqr_biconnected, NodeKind, SkelTag};
use crate::uf::UnionFind;
use crate::undirected::biconnected;

const NONE: usize = usize::MAX;

/// Partition of the unmarked vertices of `g` into marked vertex-edge blocks.
///
/// Marked vertices must not be articulation points. Parallel edges are kept,
/// so a bundle of two or more edges is never a cut.
pub fn marked_veb(g: &UGraph, marked: &[usize]) -> Result<Partition> {
    let n = g.n;
    let mut is_marked = vec![false; n];
    for &v in marked {
        if v >= n {
            return precondition(format!("marked vertex {v} out of range"));
        }
        is_marked[v] = true;
    }
    let forest = biconnected(g);
    if let Some(&a) = forest.articulation.iter().find(|&&a| is_marked[a]) {
        return precondition(format!("marked vertex {a} is an articulation point"));
    }
    let any_marked = !marked.is_empty();
    let mut glue = UnionFind::new(n);
    let mut local = vec![NONE; n];
    for (bi, edges) in forest.blocks.iter().enumerate() {
        let verts = &forest.block_vertices[bi];
        if verts.len() == 2 {
            let (a, b) = (verts[0], verts[1]);
            // A lone edge is a bridge and is cut together with any marked vertex.
            if !is_marked[a] && !is_marked[b] && (edges.len() >= 2 || !any_marked) {
                glue.union(a, b);
            }
            continue;
        }
        if !verts.iter().any(|&v| is_marked[v]) {
            for &v in &verts[1..] {
                glue.union(verts[0], v);
            }
            continue;
        }
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let sub = UGraph::from_edges(
            verts.len(),
            edges
                .iter()
                .map(|&e| (local[g.edges[e].0], local[g.edges[e].1]))
                .collect(),
        );
        // Blocks of three or more vertices have no self-loops and meet the
        // SPQR preconditions.
        let tree = spqr_biconnected(&sub);
        glue_block(&tree, verts, &is_marked, &mut glue);
        for &v in verts {
            local[v] = NONE;
        }
    }
    let ordinary: Vec<usize> = (0..n).filter(|&v| !is_marked[v]).collect();
    let mut label = vec![NONE; n];
    for &v in &ordinary {
        label[v] = glue.find(v);
    }
    Ok(Partition::from_dense_labels(&label))
}

/// Unions ordinary block vertices that no (marked vertex, edge) pair of the
/// block separates. Only S-nodes holding both a marked vertex and a real edge
/// cut anything: their cycle falls apart at marked vertices and real edges.
fn glue_block(
    tree: &crate::spqr::SpqrTree,
    verts: &[usize],
    is_marked: &[bool],
    glue: &mut UnionFind,
) {
    // Items: one per (node, skeleton vertex) and one per (node, skeleton edge).
    // `stamp[x] == i` marks x as already seen in node i.
    let mut stamp = vec![NONE; verts.len()];
    let mut base_v = Vec::with_capacity(tree.nodes.len());
    let mut base_e = Vec::with_capacity(tree.nodes.len());
    let mut total = 0;
    for (i, nd) in tree.nodes.iter().enumerate() {
        base_v.push(total);
        for &(a, b) in &nd.edges {
            for x in [a, b] {
                if stamp[x] != i {
                    stamp[x] = i;
                    total += 1;
                }
            }
        }
        base_e.push(total);
        total += nd.edges.len();
    }
    stamp.iter_mut().for_each(|s| *s = NONE);
    let ordinary = |x: usize| !is_marked[verts[x]];
    let mut uf = UnionFind::new(total);
    let mut first = vec![NONE; verts.len()];
    let mut item = vec![NONE; verts.len()];
    let mut node_verts = Vec::new();
    for (i, nd) in tree.nodes.iter().enumerate() {
        node_verts.clear();
        for &(a, b) in &nd.edges {
            for x in [a, b] {
                if stamp[x] != i {
                    stamp[x] = i;
                    item[x] = base_v[i] + node_verts.len();
                    node_verts.push(x);
                }
            }
        }
        let split = nd.kind == NodeKind::S
            && node_verts.iter().any(|&x| !ordinary(x))
            && nd.tags.iter().any(|t| matches!(t, SkelTag::Real(_)));
        for (j, tag) in nd.tags.iter().enumerate() {
            let SkelTag::Virtual {
                twin_node,
                twin_index,
            } = *tag
            else {
                continue;
            };
            uf.union(base_e[i] + j, base_e[twin_node] + twin_index);
            if split {
                let (a, b) = nd.edges[j];
                for x in [a, b] {
                    if ordinary(x) {
                        uf.union(base_e[i] + j, item[x]);
                    }
                }
            }
        }
        if !split {
            let items = base_v[i]..base_e[i] + nd.edges.len();
            for it in items.clone().skip(1) {
                uf.union(items.start, it);
            }
        }
        for &x in &node_verts {
            if ordinary(x) {
                if first[x] == NONE {
                    first[x] = item[x];
                } else {
                    uf.union(first[x], item[x]);
                }
            }
        }
    }
    let mut rep_vertex = vec![NONE; total];
    for (x, &it) in first.iter().enumerate() {
        if it == NONE {
            continue;
        }
        let r = uf.find(it);
        if rep_vertex[r] == NONE {
            rep_vertex[r] = verts[x];
        } else {
            glue.union(rep_vertex[r], verts[x]);
        }
    }
}

/// Vertex-edge cut pairs `(v, e)` visible in S-node skeletons: `v` is a
/// skeleton vertex and `e` a real skeleton edge not incident to `v`.
pub fn vertex_edge_cut_pairs(tree: &crate::spqr::SpqrTree) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for nd in tree.nodes.iter().filter(|nd| nd.kind == NodeKind::S) {
        for v in nd.vertices() {
            for (j, tag) in nd.tags.iter().enumerate() {
                if let SkelTag::Real(e) = *tag {
                    let (a, b) = nd.edges[j];
                    if a != v && b != v {
                        out.push((v, e));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, e: &[(usize, usize)]) -> UGraph {
        UGraph::from_edges(n, e.to_vec())
    }

    #[test]
    fn examples() {
        let c4 = ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            marked_veb(&c4, &[0]).unwrap().blocks(),
            &[vec![1], vec![2], vec![3]]
        );
        assert_eq!(marked_veb(&c4, &[]).unwrap().blocks(), &[vec![0, 1, 2, 3]]);
        let k4 = ug(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(marked_veb(&k4, &[0]).unwrap().blocks(), &[vec![1, 2, 3]]);
        let bowtie = ug(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(marked_veb(&bowtie, &[2]).is_err());
    }
}

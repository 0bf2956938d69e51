//! 2-edge strongly connected and 2-edge twinless strongly connected
//! components.
//!
//! Within a twinless strongly connected graph, the twinless strong bridges
//! split into strong bridges and the rest. The rest sit on 2-edge cuts of the
//! underlying graph and are handled on its cactus. Strong bridges are handled
//! per member of the final auxiliary family: each `X_e` is contracted into a
//! marked vertex and the marked vertex-edge blocks of the contracted
//! underlying graph separate exactly the pairs some strong bridge splits.

use crate::auxgraph::{
    build_final_family, classify_sc, classify_strong_bridges, final_family, AuxGraph, XeClass,
};
use crate::dominators::{flow_bridges_csr, strong_bridges, strong_bridges_with};
use crate::error::{precondition, Error, Result};
use crate::graph::{underlying, DiGraph, EdgeSet, UGraph};
use crate::mveb::marked_veb;
use crate::partition::Partition;
use crate::strong::{is_twinless_strongly_connected, scc, tscc, twinless_strong_bridges};
use crate::uf::UnionFind;
use crate::undirected::three_ecc_cactus;

const NONE: usize = usize::MAX;

/// 2-edge strongly connected components: `u, v` share a block iff they stay
/// strongly connected after deleting any single edge.
pub fn two_escc(g: &DiGraph) -> Result<Partition> {
    let sccs = scc(g).partition.into_blocks();
    let mut blocks = Vec::with_capacity(sccs.len());
    let (small, big): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
        sccs.into_iter().partition(|b| b.len() <= 2);
    for b in small {
        if b.len() == 2 && two_cycle_is_2e(g, b[0], b[1]) {
            blocks.push(b);
        } else {
            blocks.extend(b.into_iter().map(|v| vec![v]));
        }
    }
    for ((h, _), verts) in g.induced_blocks(&big).into_iter().zip(&big) {
        for member in build_final_family(&h, 0)? {
            blocks.push(member.oo_origins().into_iter().map(|v| verts[v]).collect());
        }
    }
    Ok(Partition::from_blocks(blocks))
}

fn two_cycle_is_2e(g: &DiGraph, a: usize, b: usize) -> bool {
    let fwd = g.edges.iter().filter(|&&e| e == (a, b)).count();
    let bwd = g.edges.iter().filter(|&&e| e == (b, a)).count();
    fwd >= 2 && bwd >= 2
}

/// Blocks of a twinless strongly connected graph under deletions of twinless
/// strong bridges that are not strong bridges: on the cactus of the
/// underlying graph, each such edge removes its whole cycle.
pub fn partition_et_minus_es(g: &DiGraph) -> Result<Partition> {
    if g.n < 3 {
        return if g.n <= 1 {
            Ok(Partition::single(0..g.n))
        } else {
            precondition("graph is not twinless strongly connected")
        };
    }
    if !is_twinless_strongly_connected(g) {
        return precondition("graph is not twinless strongly connected");
    }
    et_minus_es_tsc(g, &strong_bridges(g)?)
}

/// [`partition_et_minus_es`] for a graph already known to be twinless
/// strongly connected with at least three vertices, with strong bridges `es`.
fn et_minus_es_tsc(g: &DiGraph, es: &EdgeSet) -> Result<Partition> {
    let u = underlying(g);
    let cactus = three_ecc_cactus(&u.as_ugraph())?;
    let mut dead = vec![false; cactus.cycles.len()];
    for ce in &cactus.edges {
        let origins = u.origins(ce.origin);
        if origins.len() == 1 && !es.contains(origins[0]) {
            dead[ce.cycle] = true;
        }
    }
    let mut uf = UnionFind::new(cactus.node_count);
    for ce in &cactus.edges {
        if !dead[ce.cycle] {
            uf.union(ce.a, ce.b);
        }
    }
    let label: Vec<usize> = cactus.phi.iter().map(|&c| uf.find(c)).collect();
    Ok(Partition::from_dense_labels(&label))
}

/// Partition of the `oo` vertices of a final auxiliary graph (as input ids)
/// under deletions of its strong bridges.
pub fn partition_strong_bridges(h: &AuxGraph) -> Result<Partition> {
    strong_bridge_blocks(h, classify_strong_bridges)
}

/// [`partition_strong_bridges`] with the strong-bridge classifier `classify`.
fn strong_bridge_blocks(
    h: &AuxGraph,
    classify: impl Fn(&AuxGraph) -> Result<Vec<XeClass>>,
) -> Result<Partition> {
    let n = h.graph.n;
    let oo = h.oo_vertices();
    if oo.len() <= 1 {
        return Ok(Partition::singletons(oo.iter().map(|&v| h.origin[v])));
    }
    let classes = classify(h)?;
    let mut uf = UnionFind::new(n);
    let mut in_x = vec![false; n];
    for c in &classes {
        if let Some(&v) = c.set.iter().find(|&&v| h.is_oo(v)) {
            return Err(Error::Invariant(format!(
                "X_e of edge {} contains oo vertex {v}",
                c.edge
            )));
        }
        for &v in &c.set {
            in_x[v] = true;
            uf.union(c.set[0], v);
        }
    }
    let mut cid = vec![NONE; n];
    let mut of = vec![NONE; n];
    let mut k = 0;
    for v in 0..n {
        let r = uf.find(v);
        if cid[r] == NONE {
            cid[r] = k;
            k += 1;
        }
        of[v] = cid[r];
    }
    let u = underlying(&h.graph);
    let edges: Vec<(usize, usize)> = u
        .edges
        .iter()
        .map(|&(a, b)| (of[a], of[b]))
        .filter(|(a, b)| a != b)
        .collect();
    let mut marked: Vec<usize> = (0..n).filter(|&v| in_x[v]).map(|v| of[v]).collect();
    marked.sort_unstable();
    marked.dedup();
    let part = marked_veb(&UGraph::from_edges(k, edges), &marked)
        .map_err(|e| Error::Invariant(format!("contracted auxiliary graph: {e}")))?;
    let lab = part.labels(k);
    Ok(Partition::from_labels(oo.iter().copied(), |v| lab[of[v]]).mapped(|v| h.origin[v]))
}

/// 2-edge twinless strongly connected components: `u, v` share a block iff
/// they stay twinless strongly connected after deleting any single edge.
pub fn two_etscc(g: &DiGraph) -> Result<Partition> {
    let (small, big): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
        tscc(g).into_blocks().into_iter().partition(|b| b.len() < 3);
    let mut blocks: Vec<Vec<usize>> = small.into_iter().flatten().map(|v| vec![v]).collect();
    for ((h, _), verts) in g.induced_blocks(&big).into_iter().zip(&big) {
        let (h, order) = dfs_relabel(&h);
        let local = tsc_blocks(&h)?;
        blocks.extend(
            local
                .into_blocks()
                .into_iter()
                .map(|b| b.into_iter().map(|v| verts[order[v]]).collect::<Vec<_>>()),
        );
    }
    Ok(Partition::from_blocks(blocks))
}

/// Copy of a strongly connected `g` with vertices renumbered in DFS preorder
/// and edges grouped by tail, plus the old id of every new vertex. Tree paths
/// become runs of consecutive ids, which keeps the later passes cache
/// friendly. The DFS starts at a vertex maximizing min(in-degree, out-degree):
/// new vertex 0 is the auxiliary-family source, and a source with a single
/// entering or leaving edge pushes almost the whole graph into an extra
/// S-operation.
fn dfs_relabel(g: &DiGraph) -> (DiGraph, Vec<usize>) {
    let out = g.out_csr();
    let mut indeg = vec![0usize; g.n];
    for &(_, b) in &g.edges {
        indeg[b] += 1;
    }
    let root = (0..g.n)
        .max_by_key(|&v| (indeg[v].min(out.degree(v)), std::cmp::Reverse(v)))
        .unwrap_or(0);
    let mut num = vec![NONE; g.n];
    let mut order = Vec::with_capacity(g.n);
    let mut stack = vec![(root, 0)];
    num[root] = 0;
    order.push(root);
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i == out.degree(v) {
            stack.pop();
            continue;
        }
        let w = out.nbr(v, *i).0;
        *i += 1;
        if num[w] == NONE {
            num[w] = order.len();
            order.push(w);
            stack.push((w, 0));
        }
    }
    debug_assert_eq!(order.len(), g.n);
    let mut edges = Vec::with_capacity(g.m());
    for &v in &order {
        edges.extend(out.nbrs(v).map(|(w, _)| (num[v], num[w])));
    }
    edges.extend(
        g.edges
            .iter()
            .filter(|&&(a, b)| a == b)
            .map(|&(a, _)| (num[a], num[a])),
    );
    (DiGraph { n: g.n, edges }, order)
}

/// 2-edge twinless strongly connected components of a twinless strongly
/// connected graph.
pub fn two_etscc_tsc(h: &DiGraph) -> Result<Partition> {
    if h.n < 3 || !is_twinless_strongly_connected(h) {
        return partition_et_minus_es(h);
    }
    tsc_blocks(h)
}

/// Blocks of a twinless strongly connected `h`. Strong connectivity of `h`
/// and of every family member holds by construction, so the checked entry
/// points are bypassed and the forward flow bridges from 0 are shared.
fn tsc_blocks(h: &DiGraph) -> Result<Partition> {
    let (out, inn) = (h.out_csr(), h.in_csr());
    let fwd = flow_bridges_csr(&out, &inn, 0)?;
    let pe = et_minus_es_tsc(h, &strong_bridges_with(&out, &inn, &fwd, 0)?)?;
    drop(inn);
    let members = final_family(&out, &fwd, 0)?;
    let parts = members
        .iter()
        .map(|m| strong_bridge_blocks(m, classify_sc))
        .collect::<Result<Vec<_>>>()?;
    pe.refine(&Partition::union_disjoint(parts))
}

/// Reference algorithm: start from the TSCCs and refine by the TSCCs of
/// `g - e` for every twinless strong bridge `e`. Quadratic in the worst case.
pub fn baseline_2etscc(g: &DiGraph) -> Result<Partition> {
    let mut p = tscc(g);
    for e in twinless_strong_bridges(g)?.iter() {
        p = p.refine(&tscc(&g.without_edge(e)))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, e: &[(usize, usize)]) -> DiGraph {
        DiGraph::from_edges(n, e.to_vec()).unwrap()
    }

    fn cyc3() -> DiGraph {
        dg(3, &[(0, 1), (1, 2), (2, 0)])
    }

    fn bik3() -> DiGraph {
        dg(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)])
    }

    fn two_triangles() -> DiGraph {
        dg(
            5,
            &[
                (0, 1),
                (1, 0),
                (1, 2),
                (2, 1),
                (2, 0),
                (0, 2),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 3),
                (4, 2),
                (2, 4),
            ],
        )
    }

    #[test]
    fn two_escc_examples() {
        assert_eq!(two_escc(&cyc3()).unwrap(), Partition::singletons(0..3));
        assert_eq!(two_escc(&bik3()).unwrap(), Partition::single(0..3));
        assert_eq!(two_escc(&two_triangles()).unwrap(), Partition::single(0..5));
    }

    #[test]
    fn et_minus_es_examples() {
        assert_eq!(
            partition_et_minus_es(&bik3()).unwrap(),
            Partition::single(0..3)
        );
        assert_eq!(
            partition_et_minus_es(&cyc3()).unwrap(),
            Partition::single(0..3)
        );
    }

    #[test]
    fn two_etscc_examples() {
        assert_eq!(two_etscc(&cyc3()).unwrap(), Partition::singletons(0..3));
        assert_eq!(
            two_etscc(&dg(2, &[(0, 1), (1, 0)])).unwrap(),
            Partition::singletons(0..2)
        );
        assert_eq!(
            two_etscc(&two_triangles()).unwrap(),
            Partition::single(0..5)
        );
        assert_eq!(
            baseline_2etscc(&two_triangles()).unwrap(),
            Partition::single(0..5)
        );
    }
}

//! Auxiliary graphs over dominator-tree decompositions.
//!
//! For a strongly connected digraph with source `s`, deleting the bridges of
//! the flow graph splits the dominator tree into subtrees `T(r)`. The
//! first-level graph `H(G_s, r)` keeps `T(r)` (ordinary vertices), contracts
//! each child subtree `D(z)` into its root `z` (auxiliary) and everything
//! outside `D(r)` into `d(r)` (critical). Repeating the construction on the
//! reversed first-level graphs gives second-level graphs; a vertex is `oo`
//! when it is ordinary at both levels. The final family consists of `H_ss`,
//! the simplified `H_rr`, and the S-operation pieces of the remaining
//! second-level graphs; its `oo` sets partition `V`.

use serde::Serialize;

use crate::dominators::{flow_bridges_csr, BridgeDecomposition};
use crate::error::{precondition, Error, Result};
use crate::graph::{sort_by_pair, Csr, DiGraph};
use crate::strong::{is_strongly_connected, scc_labels};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Ordinary,
    Auxiliary,
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    First,
    Second,
    /// `H_ss`.
    Hss,
    /// `H_rr` after removing a critical vertex with a single predecessor.
    TildeHrr,
    /// A piece of `S(H_sr', (d(r'), r'))`.
    SplitHsr,
    /// A piece of `S(H_rr', (d(r'), r'))`.
    SplitHrr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxGraph {
    pub graph: DiGraph,
    /// Input vertex represented by each vertex: itself when ordinary, the
    /// contracted subtree root when auxiliary, `d(r)` when critical.
    pub origin: Vec<usize>,
    pub role1: Vec<Role>,
    pub role2: Vec<Role>,
    /// Edge `(d(r), r)` entering the root from the critical vertex, when present.
    pub critical_edge: Option<usize>,
    pub level: Level,
    /// Root of the first-level and (if any) second-level decomposition, as
    /// input vertex ids.
    pub roots: (usize, Option<usize>),
}

impl AuxGraph {
    pub fn is_oo(&self, v: usize) -> bool {
        self.role1[v] == Role::Ordinary && self.role2[v] == Role::Ordinary
    }

    pub fn oo_vertices(&self) -> Vec<usize> {
        (0..self.graph.n).filter(|&v| self.is_oo(v)).collect()
    }

    /// Input ids of the `oo` vertices, ascending.
    pub fn oo_origins(&self) -> Vec<usize> {
        let mut o: Vec<usize> = self
            .oo_vertices()
            .into_iter()
            .map(|v| self.origin[v])
            .collect();
        o.sort_unstable();
        o
    }
}

struct Piece {
    graph: DiGraph,
    local_to_in: Vec<usize>,
    role: Vec<Role>,
    critical_edge: Option<usize>,
    root: usize,
}

/// Sorts edges and keeps at most two copies of each; self-loops are dropped.
fn cap_two(n: usize, mut es: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    sort_by_pair(n, &mut es, |&e| e);
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(es.len());
    for e in es {
        if e.0 == e.1 {
            continue;
        }
        let k = out.len();
        if k >= 2 && out[k - 1] == e && out[k - 2] == e {
            continue;
        }
        out.push(e);
    }
    out
}

fn check_sc(g: &DiGraph, s: usize) -> Result<()> {
    if s >= g.n {
        return precondition("source out of range");
    }
    if !is_strongly_connected(g) {
        return precondition("graph is not strongly connected");
    }
    Ok(())
}

/// First-level construction over a strongly connected graph given by its
/// adjacency, with `bd` its flow bridges from `s`.
fn decompose(out: &Csr, bd: &BridgeDecomposition, s: usize) -> Vec<Piece> {
    let n = out.n();
    let dom = &bd.dom;
    let k = bd.roots.len();
    let mut ridx = vec![NONE; n];
    for (i, &r) in bd.roots.iter().enumerate() {
        ridx[r] = i;
    }
    let mut verts: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut roles: Vec<Vec<Role>> = vec![Vec::new(); k];
    let mut loc = vec![NONE; n];
    for &v in &dom.preorder {
        let r = ridx[bd.tree_of[v]];
        loc[v] = verts[r].len();
        verts[r].push(v);
        roles[r].push(Role::Ordinary);
    }
    let mut parent_root = vec![NONE; k];
    let mut loc_aux = vec![NONE; n];
    for (i, &z) in bd.roots.iter().enumerate().skip(1) {
        let p = ridx[bd.tree_of[dom.idom[z]]];
        parent_root[i] = p;
        loc_aux[z] = verts[p].len();
        verts[p].push(z);
        roles[p].push(Role::Auxiliary);
    }
    let mut loc_crit = vec![NONE; k];
    for (i, &r) in bd.roots.iter().enumerate().skip(1) {
        loc_crit[i] = verts[i].len();
        verts[i].push(dom.idom[r]);
        roles[i].push(Role::Critical);
    }

    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    // Edges leaving D(r0) toward an ancestor tree: +1 at r0, -1 at the child
    // root zc below the target tree; subtree sums count the edges leaving D(z)
    // past d(z)'s tree.
    let mut diff = vec![0i64; k];
    let mut root_depth = vec![NONE; k];
    let mut rootstack: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    rootstack.push(s);
    root_depth[0] = 0;
    let mut visit = |x: usize, rootstack: &Vec<usize>, root_depth: &Vec<usize>| {
        for (y, e) in out.nbrs(x) {
            if bd.bridge_into[y] == Some(e) {
                let p = ridx[bd.tree_of[x]];
                edges[p].push((loc[x], loc_aux[y]));
                let zi = ridx[y];
                edges[zi].push((loc_crit[zi], loc[y]));
                continue;
            }
            let r0 = ridx[bd.tree_of[x]];
            let ry = ridx[bd.tree_of[y]];
            if r0 == ry {
                edges[r0].push((loc[x], loc[y]));
            } else {
                let zc = rootstack[root_depth[ry] + 1];
                edges[ry].push((loc_aux[zc], loc[y]));
                edges[r0].push((loc[x], loc_crit[r0]));
                diff[r0] += 1;
                diff[ridx[zc]] -= 1;
            }
        }
    };
    visit(s, &rootstack, &root_depth);
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < dom.children[v].len() {
            let c = dom.children[v][*i];
            *i += 1;
            if bd.marked[c] {
                root_depth[ridx[c]] = rootstack.len();
                rootstack.push(c);
            }
            visit(c, &rootstack, &root_depth);
            stack.push((c, 0));
        } else {
            stack.pop();
            if bd.marked[v] {
                rootstack.pop();
            }
        }
    }
    for i in (1..k).rev() {
        let p = parent_root[i];
        diff[p] += diff[i];
        if p != 0 {
            debug_assert!(diff[i] >= 0);
            for _ in 0..diff[i].clamp(0, 2) {
                edges[p].push((loc_aux[bd.roots[i]], loc_crit[p]));
            }
        }
    }
    let mut pieces = Vec::with_capacity(k);
    for (i, es) in edges.into_iter().enumerate() {
        let es = cap_two(verts[i].len(), es);
        let r = bd.roots[i];
        let critical_edge = (i > 0).then(|| {
            es.iter()
                .position(|&e| e == (loc_crit[i], loc[r]))
                .expect("critical edge")
        });
        let nv = verts[i].len();
        pieces.push(Piece {
            graph: DiGraph { n: nv, edges: es },
            local_to_in: std::mem::take(&mut verts[i]),
            role: std::mem::take(&mut roles[i]),
            critical_edge,
            root: r,
        });
    }
    pieces
}

/// First-level auxiliary graphs `H(G_s, r)`, source tree first, then the
/// marked roots in dominator-tree preorder.
pub fn build_first_level(g: &DiGraph, s: usize) -> Result<Vec<AuxGraph>> {
    check_sc(g, s)?;
    let (out, inn) = (g.out_csr(), g.in_csr());
    Ok(first_level(&out, &flow_bridges_csr(&out, &inn, s)?, s))
}

fn first_level(out: &Csr, bd: &BridgeDecomposition, s: usize) -> Vec<AuxGraph> {
    decompose(out, bd, s)
        .into_iter()
        .map(|p| {
            let n = p.graph.n;
            AuxGraph {
                graph: p.graph,
                origin: p.local_to_in,
                role1: p.role,
                role2: vec![Role::Ordinary; n],
                critical_edge: p.critical_edge,
                level: Level::First,
                roots: (p.root, None),
            }
        })
        .collect()
}

/// Second-level graphs `H_rr'` of a first-level graph `H_r`: the first-level
/// construction applied to the reversal of `H_r` from `r`, reversed back.
pub fn build_second_level(h: &AuxGraph) -> Result<Vec<AuxGraph>> {
    check_sc(&h.graph, 0)?;
    second_level(h)
}

/// [`build_second_level`] for a graph known to be strongly connected.
fn second_level(h: &AuxGraph) -> Result<Vec<AuxGraph>> {
    let r = h.roots.0;
    let Some(rl) = (0..h.graph.n).find(|&v| h.origin[v] == r && h.role1[v] == Role::Ordinary)
    else {
        return Err(Error::Invariant("first-level graph lacks its root".into()));
    };
    // The reversal's adjacency is the original's with in and out swapped.
    let (out, inn) = (h.graph.out_csr(), h.graph.in_csr());
    let bd = flow_bridges_csr(&inn, &out, rl)?;
    Ok(decompose(&inn, &bd, rl)
        .into_iter()
        .map(|p| {
            let graph = p.graph.reversed();
            AuxGraph {
                graph,
                origin: p.local_to_in.iter().map(|&v| h.origin[v]).collect(),
                role1: p.local_to_in.iter().map(|&v| h.role1[v]).collect(),
                role2: p.role,
                critical_edge: p.critical_edge,
                level: Level::Second,
                roots: (r, Some(h.origin[p.root])),
            }
        })
        .collect())
}

/// S-operation: one graph per SCC `C` of `h - e`, closed up by attaching `x`
/// and `y` (when outside `C`), redirecting edges leaving `C` to `x` and edges
/// entering `C` from `y`, and adding `(x, y)`.
pub fn s_operation(h: &AuxGraph, e: usize) -> Result<Vec<AuxGraph>> {
    let g = &h.graph;
    if e >= g.m() {
        return precondition(format!("edge {e} out of range"));
    }
    let (x, y) = g.edges[e];
    let rest = DiGraph {
        n: g.n,
        edges: g
            .edges
            .iter()
            .enumerate()
            .map(|(i, &ab)| if i == e { (x, x) } else { ab })
            .collect(),
    };
    let (comp, k) = scc_labels(&rest.out_csr());
    if k < 2 || x == y {
        return precondition(format!("edge {e} is not a strong bridge"));
    }
    let mut verts: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut loc = vec![NONE; g.n];
    for v in 0..g.n {
        loc[v] = verts[comp[v]].len();
        verts[comp[v]].push(v);
    }
    let ordinary_count: Vec<usize> = verts.iter().map(Vec::len).collect();
    let mut xloc = vec![NONE; k];
    let mut yloc = vec![NONE; k];
    for c in 0..k {
        xloc[c] = if comp[x] == c {
            loc[x]
        } else {
            verts[c].push(x);
            verts[c].len() - 1
        };
        yloc[c] = if comp[y] == c {
            loc[y]
        } else {
            verts[c].push(y);
            verts[c].len() - 1
        };
    }
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if i == e || u == v {
            continue;
        }
        let (cu, cv) = (comp[u], comp[v]);
        if cu == cv {
            edges[cu].push((loc[u], loc[v]));
        } else {
            edges[cu].push((loc[u], xloc[cu]));
            edges[cv].push((yloc[cv], loc[v]));
        }
    }
    let mut out = Vec::with_capacity(k);
    // Deterministic order: by minimum member vertex.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_unstable_by_key(|&c| verts[c][0]);
    for c in order {
        let mut es = std::mem::take(&mut edges[c]);
        es.push((xloc[c], yloc[c]));
        let es = cap_two(verts[c].len(), es);
        let crit = es.iter().position(|&f| f == (xloc[c], yloc[c]));
        let vs = &verts[c];
        let attached = |i: usize| i >= ordinary_count[c];
        out.push(AuxGraph {
            graph: DiGraph {
                n: vs.len(),
                edges: es,
            },
            origin: vs.iter().map(|&v| h.origin[v]).collect(),
            role1: vs.iter().map(|&v| h.role1[v]).collect(),
            role2: vs
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if attached(i) {
                        Role::Auxiliary
                    } else {
                        h.role2[v]
                    }
                })
                .collect(),
            critical_edge: crit,
            level: h.level,
            roots: h.roots,
        });
    }
    Ok(out)
}

/// Removes the critical vertex `c` of `H_rr` when all of its predecessors are
/// one vertex `x` that is auxiliary in `H_r` and ordinary in `H_rr`, replacing
/// the path `x -> c -> r` by the edge `(x, r)`. Otherwise `H_rr` is kept.
pub fn simplify_hrr(h: AuxGraph) -> AuxGraph {
    let g = &h.graph;
    let Some(c) = (0..g.n).find(|&v| h.role1[v] == Role::Critical) else {
        return h;
    };
    let Some(r) = (0..g.n).find(|&v| h.origin[v] == h.roots.0 && h.role1[v] == Role::Ordinary)
    else {
        return h;
    };
    let outs: Vec<usize> = g
        .edges
        .iter()
        .filter(|&&(a, _)| a == c)
        .map(|&(_, b)| b)
        .collect();
    let mut ins: Vec<usize> = g
        .edges
        .iter()
        .filter(|&&(_, b)| b == c)
        .map(|&(a, _)| a)
        .collect();
    ins.sort_unstable();
    ins.dedup();
    if outs != [r]
        || ins.len() != 1
        || h.role1[ins[0]] != Role::Auxiliary
        || h.role2[ins[0]] != Role::Ordinary
    {
        return h;
    }
    let x = ins[0];
    let re = |v: usize| if v > c { v - 1 } else { v };
    let mut es: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != c && b != c)
        .map(|&(a, b)| (re(a), re(b)))
        .collect();
    es.push((re(x), re(r)));
    let keep = |v: &usize| *v != c;
    let pick = |xs: &[Role]| {
        xs.iter()
            .enumerate()
            .filter(|(i, _)| keep(i))
            .map(|(_, &v)| v)
            .collect::<Vec<_>>()
    };
    AuxGraph {
        graph: DiGraph {
            n: g.n - 1,
            edges: cap_two(g.n - 1, es),
        },
        origin: h
            .origin
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(i))
            .map(|(_, &v)| v)
            .collect(),
        role1: pick(&h.role1),
        role2: pick(&h.role2),
        critical_edge: None,
        level: h.level,
        roots: h.roots,
    }
}

/// The final family: `H_ss`, the simplified `H_rr` for every marked `r`, and
/// the S-operation pieces of every other second-level graph along its
/// critical edge. Members without `oo` vertices are dropped.
pub fn build_final_family(g: &DiGraph, s: usize) -> Result<Vec<AuxGraph>> {
    check_sc(g, s)?;
    let (out, inn) = (g.out_csr(), g.in_csr());
    final_family(&out, &flow_bridges_csr(&out, &inn, s)?, s)
}

/// [`build_final_family`] for a strongly connected graph given by its out
/// adjacency and its flow bridges `bd` from `s`.
pub(crate) fn final_family(out: &Csr, bd: &BridgeDecomposition, s: usize) -> Result<Vec<AuxGraph>> {
    let mut family = Vec::new();
    for h in first_level(out, bd, s) {
        let at_source = h.roots.0 == s;
        for (j, h2) in second_level(&h)?.into_iter().enumerate() {
            if j == 0 {
                let mut t = if at_source { h2 } else { simplify_hrr(h2) };
                t.level = if at_source {
                    Level::Hss
                } else {
                    Level::TildeHrr
                };
                family.push(t);
            } else {
                let e = h2.critical_edge.ok_or_else(|| {
                    Error::Invariant("second-level graph lacks a critical edge".into())
                })?;
                for mut piece in s_operation(&h2, e)? {
                    piece.level = if at_source {
                        Level::SplitHsr
                    } else {
                        Level::SplitHrr
                    };
                    family.push(piece);
                }
            }
        }
    }
    family.retain(|h| (0..h.graph.n).any(|v| h.is_oo(v)));
    Ok(family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum XeKind {
    /// `X_e = {x}`: `(x, y)` is the only edge leaving `x`.
    X,
    /// `X_e = {y}`: `(x, y)` is the only edge entering `y`.
    Y,
    /// `X_e = {x, y}`.
    XY,
    /// Any other set, such as `{x, d(r)}` in an unsimplified `H_rr`.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XeClass {
    pub edge: usize,
    pub kind: XeKind,
    /// Vertices split off as singleton SCCs by deleting the edge, ascending.
    pub set: Vec<usize>,
}

/// `X_e` for every strong bridge `e` of `h`, ascending by edge id. The sets
/// are read off two dominator trees rooted at an `oo` vertex `w`: `D(y)` when
/// `e` is a bridge from `w`, and `D^R(x)` when it is a bridge of the reversal.
pub fn classify_strong_bridges(h: &AuxGraph) -> Result<Vec<XeClass>> {
    if !is_strongly_connected(&h.graph) {
        return precondition("auxiliary graph is not strongly connected");
    }
    classify_sc(h)
}

/// [`classify_strong_bridges`] for a graph known to be strongly connected.
pub(crate) fn classify_sc(h: &AuxGraph) -> Result<Vec<XeClass>> {
    let g = &h.graph;
    if g.n == 0 {
        return Ok(Vec::new());
    }
    let w = (0..g.n).find(|&v| h.is_oo(v)).unwrap_or(0);
    let out = g.out_csr();
    let inn = g.in_csr();
    let fwd = flow_bridges_csr(&out, &inn, w)?;
    let rev = flow_bridges_csr(&inn, &out, w)?;
    let mut sets: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for e in fwd.flow_bridges.iter() {
        let y = g.edges[e].1;
        sets.entry(e)
            .or_default()
            .extend_from_slice(fwd.dom.subtree(y));
    }
    for e in rev.flow_bridges.iter() {
        let x = g.edges[e].0;
        sets.entry(e)
            .or_default()
            .extend_from_slice(rev.dom.subtree(x));
    }
    Ok(sets
        .into_iter()
        .map(|(e, mut set)| {
            set.sort_unstable();
            set.dedup();
            let (x, y) = g.edges[e];
            let kind = match set.as_slice() {
                [v] if *v == x => XeKind::X,
                [v] if *v == y => XeKind::Y,
                [a, b] if (*a, *b) == (x.min(y), x.max(y)) => XeKind::XY,
                _ => XeKind::Degenerate,
            };
            XeClass { edge: e, kind, set }
        })
        .collect())
}

/// `X_e` of one strong bridge `e` of `h`.
pub fn classify_xe(h: &AuxGraph, e: usize) -> Result<XeClass> {
    match classify_strong_bridges(h)?
        .into_iter()
        .find(|c| c.edge == e)
    {
        Some(c) => Ok(c),
        None => precondition(format!("edge {e} is not a strong bridge")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, e: &[(usize, usize)]) -> DiGraph {
        DiGraph::from_edges(n, e.to_vec()).unwrap()
    }

    fn edge_set(h: &AuxGraph) -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = h
            .graph
            .edges
            .iter()
            .map(|&(a, b)| (h.origin[a], h.origin[b]))
            .collect();
        es.sort_unstable();
        es
    }

    #[test]
    fn first_level_of_a_directed_triangle() {
        // Vertices 0,1,2 stand for 1,2,3 with source 1.
        let hs = build_first_level(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0).unwrap();
        assert_eq!(hs.len(), 3);
        assert_eq!(edge_set(&hs[0]), vec![(0, 1), (1, 0)]);
        assert_eq!(edge_set(&hs[1]), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(hs[1].graph.edges[hs[1].critical_edge.unwrap()], (2, 0));
        assert_eq!(
            hs[1].role1,
            vec![Role::Ordinary, Role::Auxiliary, Role::Critical]
        );
        assert_eq!(edge_set(&hs[2]), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn no_bridges_gives_one_graph() {
        let bik3 = dg(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]);
        let hs = build_first_level(&bik3, 0).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(edge_set(&hs[0]), {
            let mut e = bik3.edges.clone();
            e.sort_unstable();
            e
        });
        let fam = build_final_family(&bik3, 0).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].oo_origins(), vec![0, 1, 2]);
    }

    #[test]
    fn s_operation_on_triangle() {
        let h = build_first_level(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0)
            .unwrap()
            .remove(1);
        let e = h.graph.edges.iter().position(|&f| f == (0, 1)).unwrap();
        let parts = s_operation(&h, e).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(is_strongly_connected(&p.graph));
        }
    }

    #[test]
    fn family_of_triangle_has_singleton_oo_sets() {
        let fam = build_final_family(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0).unwrap();
        let mut sets: Vec<Vec<usize>> = fam.iter().map(|h| h.oo_origins()).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn rejects_non_strongly_connected() {
        assert!(build_first_level(&dg(2, &[(0, 1)]), 0).is_err());
    }
}

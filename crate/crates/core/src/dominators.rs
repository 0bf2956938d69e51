//! Dominator trees, flow-graph bridges and strong bridges.

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::graph::{Csr, DiGraph, EdgeSet};

/// Dominator tree of a flow graph with source `source`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomTree {
    pub source: usize,
    /// Immediate dominator; `idom[source] == source`.
    pub idom: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    /// Preorder of the dominator tree.
    pub preorder: Vec<usize>,
    pub pre: Vec<usize>,
    /// Subtree sizes; `D(v)` is `preorder[pre[v]..pre[v] + size[v]]`.
    pub size: Vec<usize>,
}

impl DomTree {
    /// Whether `a` dominates `b` (reflexive).
    #[inline]
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.pre[a] <= self.pre[b] && self.pre[b] < self.pre[a] + self.size[a]
    }

    /// Vertices dominated by `v`, `v` first.
    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.preorder[self.pre[v]..self.pre[v] + self.size[v]]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != self.source).then(|| self.idom[v])
    }
}

/// Lengauer–Tarjan with simple path compression.
pub fn dominator_tree(g: &DiGraph, s: usize) -> Result<DomTree> {
    dominator_tree_csr(&g.out_csr(), &g.in_csr(), s)
}

pub(crate) fn dominator_tree_csr(out: &Csr, inn: &Csr, s: usize) -> Result<DomTree> {
    let n = out.n();
    if s >= n {
        return precondition("source out of range");
    }
    const ROOT: u32 = u32::MAX;
    assert!(
        n < ROOT as usize,
        "graph too large for 32-bit dominator state"
    );
    // DFS numbering.
    let mut num = vec![ROOT; n];
    let mut vertex: Vec<u32> = Vec::with_capacity(n);
    let mut parent = vec![0u32; n];
    let mut it = vec![0u32; n];
    let mut stack = vec![s as u32];
    num[s] = 0;
    vertex.push(s as u32);
    while let Some(&v) = stack.last() {
        let v = v as usize;
        let i = it[v] as usize;
        if i < out.degree(v) {
            let w = out.nbr(v, i).0;
            it[v] += 1;
            if num[w] == ROOT {
                num[w] = vertex.len() as u32;
                parent[vertex.len()] = num[v];
                vertex.push(w as u32);
                stack.push(w as u32);
            }
        } else {
            stack.pop();
        }
    }
    drop(it);
    if vertex.len() != n {
        return precondition("some vertex is unreachable from the source");
    }
    // Predecessor lists renumbered by DFS number, so the main loop reads them
    // sequentially.
    let mut pred_start = Vec::with_capacity(n + 1);
    let mut pred: Vec<u32> = Vec::new();
    pred_start.push(0usize);
    for &v in &vertex {
        pred.extend(inn.nbrs(v as usize).map(|(pv, _)| num[pv]));
        pred_start.push(pred.len());
    }
    drop(num);
    // The forest state of each vertex sits in one record so that a
    // compression step touches one cache line.
    #[derive(Clone, Copy)]
    struct Lt {
        anc: u32,
        label: u32,
        semi: u32,
    }
    let mut st: Vec<Lt> = (0..n as u32)
        .map(|v| Lt {
            anc: ROOT,
            label: v,
            semi: v,
        })
        .collect();
    let mut idom = vec![0u32; n];
    let mut bucket_head = vec![ROOT; n];
    let mut bucket_next = vec![ROOT; n];
    let mut path: Vec<u32> = Vec::new();

    let eval = |v: usize, st: &mut Vec<Lt>, path: &mut Vec<u32>| -> usize {
        if st[v].anc == ROOT {
            return v;
        }
        // Compress the ancestor chain of v.
        let mut u = v;
        while st[st[u].anc as usize].anc != ROOT {
            path.push(u as u32);
            u = st[u].anc as usize;
        }
        while let Some(x) = path.pop() {
            let x = x as usize;
            let a = st[x].anc as usize;
            let (la, lx) = (st[a].label as usize, st[x].label as usize);
            if st[la].semi < st[lx].semi {
                st[x].label = la as u32;
            }
            st[x].anc = st[a].anc;
        }
        st[v].label as usize
    };

    for w in (1..n).rev() {
        for &v in &pred[pred_start[w]..pred_start[w + 1]] {
            let u = eval(v as usize, &mut st, &mut path);
            if st[u].semi < st[w].semi {
                st[w].semi = st[u].semi;
            }
        }
        let sw = st[w].semi as usize;
        bucket_next[w] = bucket_head[sw];
        bucket_head[sw] = w as u32;
        let p = parent[w];
        st[w].anc = p;
        let mut b = bucket_head[p as usize];
        while b != ROOT {
            let bi = b as usize;
            let u = eval(bi, &mut st, &mut path);
            idom[bi] = if st[u].semi < st[bi].semi {
                u as u32
            } else {
                p
            };
            b = bucket_next[bi];
        }
        bucket_head[p as usize] = ROOT;
    }
    for w in 1..n {
        if idom[w] != st[w].semi {
            idom[w] = idom[idom[w] as usize];
        }
    }
    let mut id = vec![0usize; n];
    id[s] = s;
    for w in 1..n {
        id[vertex[w] as usize] = vertex[idom[w] as usize] as usize;
    }
    Ok(build_tree(s, id))
}

fn build_tree(s: usize, idom: Vec<usize>) -> DomTree {
    let n = idom.len();
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if v != s {
            children[idom[v]].push(v);
        }
    }
    let mut preorder = Vec::with_capacity(n);
    let mut pre = vec![0usize; n];
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        pre[v] = preorder.len();
        preorder.push(v);
        for &c in children[v].iter().rev() {
            stack.push(c);
        }
    }
    let mut size = vec![1usize; n];
    for &v in preorder.iter().rev() {
        if v != s {
            size[idom[v]] += size[v];
        }
    }
    DomTree {
        source: s,
        idom,
        children,
        preorder,
        pre,
        size,
    }
}

/// Bridges of a flow graph and the induced decomposition of its dominator tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub dom: DomTree,
    pub flow_bridges: EdgeSet,
    /// Bridge entering each marked vertex.
    pub bridge_into: Vec<Option<usize>>,
    pub marked: Vec<bool>,
    /// Root `r` of the subtree `T(r)` holding each vertex.
    pub tree_of: Vec<usize>,
    /// Roots in dominator-tree preorder, source first.
    pub roots: Vec<usize>,
}

impl BridgeDecomposition {
    /// Members of `T(r)` in dominator-tree preorder.
    pub fn members(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.dom.children[v].iter().rev() {
                if !self.marked[c] {
                    stack.push(c);
                }
            }
        }
        out
    }
}

pub fn flow_bridges(g: &DiGraph, s: usize) -> Result<BridgeDecomposition> {
    flow_bridges_csr(&g.out_csr(), &g.in_csr(), s)
}

/// Flow bridges from `s`; swapping `out` and `inn` gives those of the reversal.
pub(crate) fn flow_bridges_csr(out: &Csr, inn: &Csr, s: usize) -> Result<BridgeDecomposition> {
    let dom = dominator_tree_csr(out, inn, s)?;
    let n = out.n();
    let mut bridge_into = vec![None; n];
    let mut marked = vec![false; n];
    let mut bridges = Vec::new();
    // (u,v) is a bridge iff it is the only edge entering v from outside D(v).
    for v in 0..n {
        if v == s {
            continue;
        }
        let mut entering = inn.nbrs(v).filter(|&(u, _)| !dom.dominates(v, u));
        if let (Some((u, e)), None) = (entering.next(), entering.next()) {
            debug_assert_eq!(u, dom.idom[v]);
            bridge_into[v] = Some(e);
            marked[v] = true;
            bridges.push(e);
        }
    }
    let mut tree_of = vec![0usize; n];
    let mut roots = Vec::new();
    for &v in &dom.preorder {
        if v == s || marked[v] {
            tree_of[v] = v;
            roots.push(v);
        } else {
            tree_of[v] = tree_of[dom.idom[v]];
        }
    }
    Ok(BridgeDecomposition {
        dom,
        flow_bridges: EdgeSet::from_unsorted(bridges),
        bridge_into,
        marked,
        tree_of,
        roots,
    })
}

/// Strong bridges of a strongly connected digraph, from source 0.
pub fn strong_bridges(g: &DiGraph) -> Result<EdgeSet> {
    if g.n == 0 {
        return Ok(EdgeSet::default());
    }
    strong_bridges_from(g, 0)
}

pub fn strong_bridges_from(g: &DiGraph, s: usize) -> Result<EdgeSet> {
    let out = g.out_csr();
    let inn = g.in_csr();
    let fwd = flow_bridges_csr(&out, &inn, s).map_err(|_| not_sc())?;
    strong_bridges_with(&out, &inn, &fwd, s)
}

/// Strong bridges given the forward flow bridges `fwd` from `s`.
pub(crate) fn strong_bridges_with(
    out: &Csr,
    inn: &Csr,
    fwd: &BridgeDecomposition,
    s: usize,
) -> Result<EdgeSet> {
    let rev = flow_bridges_csr(inn, out, s).map_err(|_| not_sc())?;
    let mut all = fwd.flow_bridges.0.clone();
    all.extend(rev.flow_bridges.0);
    Ok(EdgeSet::from_unsorted(all))
}

fn not_sc() -> crate::error::Error {
    crate::error::Error::Precondition("graph is not strongly connected".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, e: &[(usize, usize)]) -> DiGraph {
        DiGraph::from_edges(n, e.to_vec()).unwrap()
    }

    #[test]
    fn dominator_examples() {
        let t = dominator_tree(&dg(3, &[(0, 1), (1, 2)]), 0).unwrap();
        assert_eq!(t.idom, vec![0, 0, 1]);
        let t = dominator_tree(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0).unwrap();
        assert_eq!(t.idom, vec![0, 0, 1]);
        let t = dominator_tree(&dg(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]), 0).unwrap();
        assert_eq!(t.idom[3], 0);
        assert!(dominator_tree(&dg(2, &[]), 0).is_err());
    }

    #[test]
    fn flow_bridge_examples() {
        let b = flow_bridges(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0).unwrap();
        assert_eq!(b.flow_bridges.0, vec![0, 1]);
        assert_eq!(b.marked, vec![false, true, true]);
        assert_eq!(b.tree_of, vec![0, 1, 2]);
        let b = flow_bridges(&dg(2, &[(0, 1), (1, 0)]), 0).unwrap();
        assert_eq!(b.flow_bridges.0, vec![0]);
        let b = flow_bridges(&dg(2, &[(0, 1), (0, 1), (1, 0)]), 0).unwrap();
        assert!(b.flow_bridges.is_empty());
    }

    #[test]
    fn strong_bridge_examples() {
        assert_eq!(
            strong_bridges(&dg(3, &[(0, 1), (1, 2), (2, 0)])).unwrap().0,
            vec![0, 1, 2]
        );
        let bik3 = dg(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]);
        assert!(strong_bridges(&bik3).unwrap().is_empty());
        let diamond = dg(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]);
        assert_eq!(strong_bridges(&diamond).unwrap().0, vec![0, 1, 2, 3, 4]);
        assert!(strong_bridges(&dg(2, &[(0, 1)])).is_err());
    }
}

//! Triconnected components and SPQR trees of biconnected multigraphs
//! (Hopcroft–Tarjan path search with the Gutwenger–Mutzel corrections).

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::graph::{sort_by_pair, UGraph};
use crate::uf::UnionFind;
use crate::undirected::biconnected;

const NONE: usize = usize::MAX;
const EOS: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    /// Cycle skeleton.
    S,
    /// Two vertices joined by three or more edges.
    P,
    /// Simple triconnected skeleton.
    R,
}

/// Tag of a skeleton edge. Q-nodes are not materialized: a real edge tag
/// stands for the Q-node of that edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkelTag {
    Real(usize),
    Virtual { twin_node: usize, twin_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpqrNode {
    pub kind: NodeKind,
    /// Skeleton edge endpoints (input vertex ids). For S-nodes the edges are
    /// in cyclic order and edge `i` runs from `edges[i].0` to `edges[i].1 ==
    /// edges[i+1].0`.
    pub edges: Vec<(usize, usize)>,
    pub tags: Vec<SkelTag>,
}

impl SpqrNode {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn real_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.tags.iter().filter_map(|t| match *t {
            SkelTag::Real(e) => Some(e),
            SkelTag::Virtual { .. } => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    /// Tree edges as node pairs; each comes from one virtual edge pair.
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EType {
    Unseen,
    Tree,
    Frond,
    Removed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CKind {
    Bond,
    Polygon,
    Tric,
}

struct Comp {
    edges: Vec<usize>,
    kind: CKind,
}

/// Doubly linked lists over a shared slot arena.
struct Lists {
    val: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
    owner: Vec<usize>,
}

impl Lists {
    fn new(k: usize) -> Self {
        Lists {
            val: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            head: vec![NONE; k],
            tail: vec![NONE; k],
            owner: Vec::new(),
        }
    }

    fn push_back(&mut self, l: usize, x: usize) -> usize {
        let s = self.val.len();
        self.val.push(x);
        self.next.push(NONE);
        self.prev.push(self.tail[l]);
        self.owner.push(l);
        if self.tail[l] != NONE {
            self.next[self.tail[l]] = s;
        } else {
            self.head[l] = s;
        }
        self.tail[l] = s;
        s
    }

    fn push_front(&mut self, l: usize, x: usize) -> usize {
        let s = self.val.len();
        self.val.push(x);
        self.next.push(self.head[l]);
        self.prev.push(NONE);
        self.owner.push(l);
        if self.head[l] != NONE {
            self.prev[self.head[l]] = s;
        } else {
            self.tail[l] = s;
        }
        self.head[l] = s;
        s
    }

    fn del(&mut self, s: usize) {
        let l = self.owner[s];
        let (p, n) = (self.prev[s], self.next[s]);
        if p != NONE {
            self.next[p] = n;
        } else {
            self.head[l] = n;
        }
        if n != NONE {
            self.prev[n] = p;
        } else {
            self.tail[l] = p;
        }
        self.prev[s] = NONE;
        self.next[s] = NONE;
    }
}

struct Frame {
    v: usize,
    outv: usize,
    it: usize,
    it_next: usize,
    e: usize,
    returning: bool,
}

struct Tric {
    n: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    etype: Vec<EType>,
    start_flag: Vec<bool>,
    in_adj: Vec<usize>,
    in_high: Vec<usize>,
    number: Vec<usize>,
    newnum: Vec<usize>,
    lowpt1: Vec<usize>,
    lowpt2: Vec<usize>,
    nd: Vec<usize>,
    father: Vec<usize>,
    degree: Vec<usize>,
    tree_arc: Vec<usize>,
    nodeat: Vec<usize>,
    adj: Lists,
    highpt: Lists,
    estack: Vec<usize>,
    th: Vec<i64>,
    ta: Vec<i64>,
    tb: Vec<i64>,
    comps: Vec<Comp>,
    start: usize,
}

impl Tric {
    fn new_edge(&mut self, a: usize, b: usize) -> usize {
        self.src.push(a);
        self.tgt.push(b);
        self.etype.push(EType::Unseen);
        self.start_flag.push(false);
        self.in_adj.push(NONE);
        self.in_high.push(NONE);
        self.src.len() - 1
    }

    fn top(&self) -> usize {
        self.ta.len() - 1
    }

    fn tpush(&mut self, h: i64, a: i64, b: i64) {
        self.th.push(h);
        self.ta.push(a);
        self.tb.push(b);
    }

    fn tpop(&mut self) {
        self.th.pop();
        self.ta.pop();
        self.tb.pop();
    }

    fn high(&self, v: usize) -> usize {
        let h = self.highpt.head[v];
        if h == NONE {
            0
        } else {
            self.highpt.val[h]
        }
    }

    fn del_high(&mut self, e: usize) {
        let s = self.in_high[e];
        if s != NONE {
            self.highpt.del(s);
            self.in_high[e] = NONE;
        }
    }

    fn first_child_num(&self, w: usize) -> usize {
        let s = self.adj.head[w];
        if s == NONE {
            0
        } else {
            self.newnum[self.tgt[self.adj.val[s]]]
        }
    }

    fn new_comp(&mut self, kind: CKind) -> usize {
        self.comps.push(Comp {
            edges: Vec::new(),
            kind,
        });
        self.comps.len() - 1
    }

    fn finish_tric_or_poly(&mut self, c: usize, e: usize) {
        self.comps[c].edges.push(e);
        self.comps[c].kind = if self.comps[c].edges.len() >= 4 {
            CKind::Tric
        } else {
            CKind::Polygon
        };
    }

    fn dfs1(&mut self, off: &[usize], inc: &[usize]) {
        let n = self.n;
        let mut count = 0;
        let s = self.start;
        count += 1;
        self.number[s] = count;
        self.father[s] = NONE;
        self.lowpt1[s] = count;
        self.lowpt2[s] = count;
        self.nd[s] = 1;
        let mut stack: Vec<(usize, usize)> = vec![(s, off[s])];
        debug_assert!(n > 0);
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < off[v + 1] {
                let e = inc[*idx];
                *idx += 1;
                if self.etype[e] != EType::Unseen {
                    continue;
                }
                let w = if self.src[e] == v {
                    self.tgt[e]
                } else {
                    self.src[e]
                };
                self.src[e] = v;
                self.tgt[e] = w;
                if self.number[w] == 0 {
                    self.etype[e] = EType::Tree;
                    self.tree_arc[w] = e;
                    self.father[w] = v;
                    count += 1;
                    self.number[w] = count;
                    self.lowpt1[w] = count;
                    self.lowpt2[w] = count;
                    self.nd[w] = 1;
                    stack.push((w, off[w]));
                } else {
                    self.etype[e] = EType::Frond;
                    let nw = self.number[w];
                    if nw < self.lowpt1[v] {
                        self.lowpt2[v] = self.lowpt1[v];
                        self.lowpt1[v] = nw;
                    } else if nw > self.lowpt1[v] {
                        self.lowpt2[v] = self.lowpt2[v].min(nw);
                    }
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    let w = v;
                    if self.lowpt1[w] < self.lowpt1[p] {
                        self.lowpt2[p] = self.lowpt1[p].min(self.lowpt2[w]);
                        self.lowpt1[p] = self.lowpt1[w];
                    } else if self.lowpt1[w] == self.lowpt1[p] {
                        self.lowpt2[p] = self.lowpt2[p].min(self.lowpt2[w]);
                    } else {
                        self.lowpt2[p] = self.lowpt2[p].min(self.lowpt1[w]);
                    }
                    self.nd[p] += self.nd[w];
                }
            }
        }
    }

    fn build_acceptable_adj(&mut self) {
        let n = self.n;
        let max = 3 * n + 3;
        let arena = self.src.len();
        let mut phi = vec![NONE; arena];
        let mut start = vec![0usize; max + 1];
        for e in 0..arena {
            let t = self.etype[e];
            if t == EType::Removed || t == EType::Unseen {
                continue;
            }
            let w = self.tgt[e];
            let p = if t == EType::Frond {
                3 * self.number[w] + 1
            } else if self.lowpt2[w] < self.number[self.src[e]] {
                3 * self.lowpt1[w]
            } else {
                3 * self.lowpt1[w] + 2
            };
            phi[e] = p;
            start[p + 1] += 1;
        }
        for i in 0..max {
            start[i + 1] += start[i];
        }
        let mut sorted = vec![0usize; start[max]];
        for e in 0..arena {
            if phi[e] != NONE {
                sorted[start[phi[e]]] = e;
                start[phi[e]] += 1;
            }
        }
        for e in sorted {
            let s = self.adj.push_back(self.src[e], e);
            self.in_adj[e] = s;
        }
    }

    fn path_finder(&mut self) {
        let mut num_count = self.n;
        let mut new_path = true;
        let s = self.start;
        self.newnum[s] = num_count - self.nd[s] + 1;
        let mut stack: Vec<(usize, usize)> = vec![(s, self.adj.head[s])];
        while let Some(&(v, slot)) = stack.last() {
            if slot == NONE {
                stack.pop();
                if !stack.is_empty() {
                    num_count -= 1;
                }
                continue;
            }
            stack.last_mut().expect("nonempty").1 = self.adj.next[slot];
            let e = self.adj.val[slot];
            let w = self.tgt[e];
            if new_path {
                new_path = false;
                self.start_flag[e] = true;
            }
            if self.etype[e] == EType::Tree {
                self.newnum[w] = num_count - self.nd[w] + 1;
                stack.push((w, self.adj.head[w]));
            } else {
                let h = self.highpt.push_back(w, self.newnum[v]);
                self.in_high[e] = h;
                new_path = true;
            }
        }
    }

    fn path_search(&mut self) {
        let s = self.start;
        let head = self.adj.head[s];
        let outv = self.adj_len(s);
        let mut frames = vec![Frame {
            v: s,
            outv,
            it: head,
            it_next: NONE,
            e: NONE,
            returning: false,
        }];
        while let Some(f) = frames.last_mut() {
            if f.returning {
                f.returning = false;
                let (v, it, e) = (f.v, f.it, f.e);
                let mut outv = f.outv;
                self.after_tree_arc(v, it, e, &mut outv);
                let f = frames.last_mut().expect("frame");
                f.outv = outv;
                f.it = f.it_next;
                continue;
            }
            if f.it == NONE {
                frames.pop();
                if let Some(p) = frames.last_mut() {
                    p.returning = true;
                }
                continue;
            }
            let it = f.it;
            f.it_next = self.adj.next[it];
            let v = f.v;
            let e = self.adj.val[it];
            f.e = e;
            let w = self.tgt[e];
            let vnum = self.newnum[v] as i64;
            let wnum = self.newnum[w] as i64;
            if self.etype[e] == EType::Tree {
                if self.start_flag[e] {
                    let l1 = self.lowpt1[w] as i64;
                    let mut y = 0i64;
                    if self.ta[self.top()] > l1 {
                        let mut b;
                        loop {
                            y = y.max(self.th[self.top()]);
                            b = self.tb[self.top()];
                            self.tpop();
                            if self.ta[self.top()] <= l1 {
                                break;
                            }
                        }
                        self.tpush(y, l1, b);
                    } else {
                        self.tpush(wnum + self.nd[w] as i64 - 1, l1, vnum);
                    }
                    self.tpush(0, EOS, 0);
                }
                let head = self.adj.head[w];
                let outw = self.adj_len(w);
                frames.push(Frame {
                    v: w,
                    outv: outw,
                    it: head,
                    it_next: NONE,
                    e: NONE,
                    returning: false,
                });
            } else {
                if self.start_flag[e] {
                    let mut y = 0i64;
                    if self.ta[self.top()] > wnum {
                        let mut b;
                        loop {
                            y = y.max(self.th[self.top()]);
                            b = self.tb[self.top()];
                            self.tpop();
                            if self.ta[self.top()] <= wnum {
                                break;
                            }
                        }
                        self.tpush(y, wnum, b);
                    } else {
                        self.tpush(vnum, wnum, vnum);
                    }
                }
                self.estack.push(e);
                f.it = f.it_next;
            }
        }
    }

    fn adj_len(&self, v: usize) -> usize {
        let mut k = 0;
        let mut s = self.adj.head[v];
        while s != NONE {
            k += 1;
            s = self.adj.next[s];
        }
        k
    }

    fn after_tree_arc(&mut self, v: usize, it: usize, e: usize, outv: &mut usize) {
        let vnum = self.newnum[v] as i64;
        let mut w = self.tgt[e];
        let ta_w = self.tree_arc[w];
        self.estack.push(ta_w);
        let mut wnum = self.newnum[w] as i64;

        while vnum != 1
            && (self.ta[self.top()] == vnum
                || (self.degree[w] == 2 && self.first_child_num(w) as i64 > wnum))
        {
            let a = self.ta[self.top()];
            let b = self.tb[self.top()];
            if a == vnum
                && b >= 1
                && self.father[self.nodeat[b as usize]] == self.nodeat[a as usize]
            {
                self.tpop();
                continue;
            }
            let mut e_ab = NONE;
            let x;
            let mut e_virt;
            if self.degree[w] == 2 && self.first_child_num(w) as i64 > wnum {
                let e1 = self.estack.pop().expect("estack");
                let e2 = self.estack.pop().expect("estack");
                debug_assert_eq!(self.src[e2], w);
                self.adj.del(self.in_adj[e2]);
                x = self.tgt[e2];
                e_virt = self.new_edge(v, x);
                self.degree[x] -= 1;
                self.degree[v] -= 1;
                let c = self.new_comp(CKind::Polygon);
                self.comps[c].edges.extend([e1, e2, e_virt]);
                if let Some(&top) = self.estack.last() {
                    if self.src[top] == x && self.tgt[top] == v {
                        e_ab = self.estack.pop().expect("estack");
                        self.adj.del(self.in_adj[e_ab]);
                        self.del_high(e_ab);
                    }
                }
            } else {
                let h = self.th[self.top()];
                self.tpop();
                let c = self.new_comp(CKind::Polygon);
                while let Some(&xy) = self.estack.last() {
                    let xs = self.src[xy];
                    let xt = self.tgt[xy];
                    let (ns, nt) = (self.newnum[xs] as i64, self.newnum[xt] as i64);
                    if !(a <= ns && ns <= h && a <= nt && nt <= h) {
                        break;
                    }
                    if (ns == a && nt == b) || (nt == a && ns == b) {
                        e_ab = self.estack.pop().expect("estack");
                        self.adj.del(self.in_adj[e_ab]);
                        self.del_high(e_ab);
                    } else {
                        let eh = self.estack.pop().expect("estack");
                        if it != self.in_adj[eh] {
                            self.adj.del(self.in_adj[eh]);
                            self.del_high(eh);
                        }
                        self.comps[c].edges.push(eh);
                        self.degree[xs] -= 1;
                        self.degree[xt] -= 1;
                    }
                }
                e_virt = self.new_edge(self.nodeat[a as usize], self.nodeat[b as usize]);
                self.finish_tric_or_poly(c, e_virt);
                x = self.nodeat[b as usize];
            }
            if e_ab != NONE {
                let c = self.new_comp(CKind::Bond);
                self.comps[c].edges.extend([e_ab, e_virt]);
                e_virt = self.new_edge(v, x);
                self.comps[c].edges.push(e_virt);
                self.degree[x] -= 1;
                self.degree[v] -= 1;
            }
            self.estack.push(e_virt);
            self.adj.val[it] = e_virt;
            self.in_adj[e_virt] = it;
            self.degree[x] += 1;
            self.degree[v] += 1;
            self.father[x] = v;
            self.tree_arc[x] = e_virt;
            self.etype[e_virt] = EType::Tree;
            w = x;
            wnum = self.newnum[w] as i64;
        }

        let l1 = self.lowpt1[w];
        if self.lowpt2[w] as i64 >= vnum
            && (l1 as i64) < vnum
            && (self.father[v] != self.start || *outv >= 2)
        {
            let c = self.new_comp(CKind::Polygon);
            let (mut xx, mut yy) = (0i64, 0i64);
            let nd_w = self.nd[w] as i64;
            while let Some(&xy) = self.estack.last() {
                xx = self.newnum[self.src[xy]] as i64;
                yy = self.newnum[self.tgt[xy]] as i64;
                if !((wnum <= xx && xx < wnum + nd_w) || (wnum <= yy && yy < wnum + nd_w)) {
                    break;
                }
                self.estack.pop();
                self.comps[c].edges.push(xy);
                self.del_high(xy);
                let (a, b) = (self.nodeat[xx as usize], self.nodeat[yy as usize]);
                self.degree[a] -= 1;
                self.degree[b] -= 1;
            }
            let lw = self.nodeat[l1];
            let mut e_virt = self.new_edge(v, lw);
            self.finish_tric_or_poly(c, e_virt);
            if (xx == vnum && yy == l1 as i64) || (yy == vnum && xx == l1 as i64) {
                let cb = self.new_comp(CKind::Bond);
                let eh = self.estack.pop().expect("estack");
                if it != self.in_adj[eh] {
                    self.adj.del(self.in_adj[eh]);
                }
                self.comps[cb].edges.extend([eh, e_virt]);
                e_virt = self.new_edge(v, lw);
                self.comps[cb].edges.push(e_virt);
                self.in_high[e_virt] = self.in_high[eh];
                self.degree[v] -= 1;
                self.degree[lw] -= 1;
            }
            if lw != self.father[v] {
                self.estack.push(e_virt);
                self.adj.val[it] = e_virt;
                self.in_adj[e_virt] = it;
                self.etype[e_virt] = EType::Frond;
                if self.in_high[e_virt] == NONE && self.high(lw) < vnum as usize {
                    let h = self.highpt.push_front(lw, vnum as usize);
                    self.in_high[e_virt] = h;
                }
                self.degree[v] += 1;
                self.degree[lw] += 1;
            } else {
                self.adj.del(it);
                let cb = self.new_comp(CKind::Bond);
                self.comps[cb].edges.push(e_virt);
                let eh = self.tree_arc[v];
                self.comps[cb].edges.push(eh);
                let ev2 = self.new_edge(lw, v);
                self.comps[cb].edges.push(ev2);
                self.etype[ev2] = EType::Tree;
                self.in_high[ev2] = self.in_high[eh];
                self.tree_arc[v] = ev2;
                let slot = self.in_adj[eh];
                self.in_adj[ev2] = slot;
                self.adj.val[slot] = ev2;
            }
        }

        if self.start_flag[e] {
            while self.ta[self.top()] != EOS {
                self.tpop();
            }
            self.tpop();
        }
        while self.ta[self.top()] != EOS
            && self.tb[self.top()] != vnum
            && self.high(v) as i64 > self.th[self.top()]
        {
            self.tpop();
        }
        *outv -= 1;
    }
}

/// Split components of a biconnected multigraph, merged into triconnected
/// components. Returns the edge arena endpoints, the number of real edges
/// (ids below it are input edge ids) and the components.
fn triconnected_components(g: &UGraph) -> (Vec<(usize, usize)>, Vec<(CKind, Vec<usize>)>) {
    let n = g.n;
    let m = g.m();
    let mut t = Tric {
        n,
        src: Vec::with_capacity(2 * m),
        tgt: Vec::with_capacity(2 * m),
        etype: Vec::new(),
        start_flag: Vec::new(),
        in_adj: Vec::new(),
        in_high: Vec::new(),
        number: vec![0; n],
        newnum: vec![0; n],
        lowpt1: vec![0; n],
        lowpt2: vec![0; n],
        nd: vec![0; n],
        father: vec![NONE; n],
        degree: vec![0; n],
        tree_arc: vec![NONE; n],
        nodeat: vec![NONE; n + 1],
        adj: Lists::new(n),
        highpt: Lists::new(n),
        estack: Vec::new(),
        th: Vec::new(),
        ta: Vec::new(),
        tb: Vec::new(),
        comps: Vec::new(),
        start: 0,
    };
    for &(a, b) in &g.edges {
        t.new_edge(a, b);
    }
    // Bundles of parallel edges become bonds with one virtual representative.
    let mut keyed: Vec<(usize, usize, usize)> = (0..m)
        .map(|e| {
            (
                g.edges[e].0.min(g.edges[e].1),
                g.edges[e].0.max(g.edges[e].1),
                e,
            )
        })
        .collect();
    sort_by_pair(n, &mut keyed, |k| (k.0, k.1));
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i + 1;
        while j < keyed.len() && (keyed[j].0, keyed[j].1) == (keyed[i].0, keyed[i].1) {
            j += 1;
        }
        if j - i >= 2 {
            let c = t.new_comp(CKind::Bond);
            for k in &keyed[i..j] {
                t.etype[k.2] = EType::Removed;
                t.comps[c].edges.push(k.2);
            }
            let ev = t.new_edge(keyed[i].0, keyed[i].1);
            t.comps[c].edges.push(ev);
        }
        i = j;
    }
    if n <= 2 {
        // Only a bundle remains; its bond is the whole decomposition.
        let endpoints: Vec<(usize, usize)> =
            t.src.iter().zip(&t.tgt).map(|(&a, &b)| (a, b)).collect();
        let comps = t
            .comps
            .into_iter()
            .map(|c| (c.kind, c.edges.into_iter().filter(|&e| e < m).collect()))
            .collect();
        return (endpoints, comps);
    }
    let live: Vec<usize> = (0..t.src.len())
        .filter(|&e| t.etype[e] != EType::Removed)
        .collect();
    for &e in &live {
        t.degree[t.src[e]] += 1;
        t.degree[t.tgt[e]] += 1;
    }
    let mut off = vec![0usize; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + t.degree[v];
    }
    let mut fill = off.clone();
    let mut inc = vec![0usize; off[n]];
    for &e in &live {
        for x in [t.src[e], t.tgt[e]] {
            inc[fill[x]] = e;
            fill[x] += 1;
        }
    }
    t.dfs1(&off, &inc);
    t.build_acceptable_adj();
    t.path_finder();
    let mut old2new = vec![0usize; n + 1];
    for v in 0..n {
        old2new[t.number[v]] = t.newnum[v];
    }
    for v in 0..n {
        t.nodeat[t.newnum[v]] = v;
        t.lowpt1[v] = old2new[t.lowpt1[v]];
        t.lowpt2[v] = old2new[t.lowpt2[v]];
    }
    t.tpush(0, EOS, 0);
    t.path_search();
    let c = t.new_comp(CKind::Polygon);
    while let Some(e) = t.estack.pop() {
        t.comps[c].edges.push(e);
    }
    t.comps[c].kind = if t.comps[c].edges.len() > 4 {
        CKind::Tric
    } else {
        CKind::Polygon
    };

    let endpoints: Vec<(usize, usize)> = t.src.iter().zip(&t.tgt).map(|(&a, &b)| (a, b)).collect();
    let comps = merge_components(&t.comps, endpoints.len());
    (endpoints, comps)
}

/// Merges adjacent bonds with bonds and polygons with polygons; the virtual
/// edges they shared disappear.
fn merge_components(comps: &[Comp], arena: usize) -> Vec<(CKind, Vec<usize>)> {
    let k = comps.len();
    let mut first = vec![NONE; arena];
    let mut second = vec![NONE; arena];
    for (ci, c) in comps.iter().enumerate() {
        for &e in &c.edges {
            if first[e] == NONE {
                first[e] = ci;
            } else {
                second[e] = ci;
            }
        }
    }
    let mut uf = UnionFind::new(k);
    let mut dissolved = vec![false; arena];
    for e in 0..arena {
        let (a, b) = (first[e], second[e]);
        if a != NONE && b != NONE && comps[a].kind == comps[b].kind && comps[a].kind != CKind::Tric
        {
            uf.union(a, b);
            dissolved[e] = true;
        }
    }
    let mut out_index = vec![NONE; k];
    let mut out: Vec<(CKind, Vec<usize>)> = Vec::new();
    for ci in 0..k {
        if comps[ci].edges.is_empty() {
            continue;
        }
        let r = uf.find(ci);
        if out_index[r] == NONE {
            out_index[r] = out.len();
            out.push((comps[ci].kind, Vec::new()));
        }
        let o = out_index[r];
        for &e in &comps[ci].edges {
            if !dissolved[e] {
                out[o].1.push(e);
            }
        }
    }
    out.retain(|c| !c.1.is_empty());
    out
}

/// SPQR tree of a biconnected multigraph with at least two vertices (two
/// vertices need three or more parallel edges).
pub fn spqr(g: &UGraph) -> Result<SpqrTree> {
    if g.edges.iter().any(|&(a, b)| a == b) {
        return precondition("SPQR tree input has a self-loop");
    }
    if g.n < 2 {
        return precondition("SPQR tree needs at least two vertices");
    }
    let forest = biconnected(g);
    if forest.blocks.len() != 1 || forest.block_vertices[0].len() != g.n {
        return precondition("graph is not biconnected");
    }
    if g.n == 2 && g.m() < 3 {
        return precondition("two vertices need at least three parallel edges");
    }
    Ok(spqr_biconnected(g))
}

/// [`spqr`] for an input already known to satisfy its preconditions.
pub(crate) fn spqr_biconnected(g: &UGraph) -> SpqrTree {
    let m = g.m();
    let (ends, comps) = triconnected_components(g);
    let mut nodes: Vec<SpqrNode> = Vec::with_capacity(comps.len());
    let mut place = vec![(NONE, NONE); ends.len()];
    let mut tree_edges = Vec::new();
    for (kind, edges) in &comps {
        let kind = match kind {
            CKind::Bond => NodeKind::P,
            CKind::Polygon => NodeKind::S,
            CKind::Tric => NodeKind::R,
        };
        let order = if kind == NodeKind::S {
            cycle_order(edges, &ends)
        } else {
            edges.iter().map(|&e| (e, ends[e])).collect()
        };
        let ni = nodes.len();
        let mut node = SpqrNode {
            kind,
            edges: Vec::new(),
            tags: Vec::new(),
        };
        for (idx, (e, ab)) in order.into_iter().enumerate() {
            node.edges.push(ab);
            if e < m {
                node.tags.push(SkelTag::Real(e));
            } else {
                node.tags.push(SkelTag::Virtual {
                    twin_node: NONE,
                    twin_index: NONE,
                });
                if place[e].0 == NONE {
                    place[e] = (ni, idx);
                } else {
                    let (tn, ti) = place[e];
                    node.tags[idx] = SkelTag::Virtual {
                        twin_node: tn,
                        twin_index: ti,
                    };
                    tree_edges.push((tn, ni));
                    place[e] = (NONE, NONE);
                    nodes[tn].tags[ti] = SkelTag::Virtual {
                        twin_node: ni,
                        twin_index: idx,
                    };
                }
            }
        }
        nodes.push(node);
    }
    SpqrTree { nodes, tree_edges }
}

/// Orders the edges of a cycle so consecutive edges share a vertex.
fn cycle_order(edges: &[usize], ends: &[(usize, usize)]) -> Vec<(usize, (usize, usize))> {
    let mut at: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        at.entry(ends[e].0).or_default().push(i);
        at.entry(ends[e].1).or_default().push(i);
    }
    let k = edges.len();
    let mut used = vec![false; k];
    let mut out = Vec::with_capacity(k);
    let (mut cur_v, _) = ends[edges[0]];
    let mut cur = 0;
    for _ in 0..k {
        used[cur] = true;
        let (a, b) = ends[edges[cur]];
        let next_v = if a == cur_v { b } else { a };
        out.push((edges[cur], (cur_v, next_v)));
        cur_v = next_v;
        match at[&cur_v].iter().find(|&&i| !used[i]) {
            Some(&i) => cur = i,
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, e: &[(usize, usize)]) -> UGraph {
        UGraph::from_edges(n, e.to_vec())
    }

    fn kinds(t: &SpqrTree) -> Vec<NodeKind> {
        let mut k: Vec<NodeKind> = t.nodes.iter().map(|n| n.kind).collect();
        k.sort_by_key(|k| format!("{k:?}"));
        k
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(
            kinds(&spqr(&ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap()),
            vec![NodeKind::S]
        );
        let k4 = ug(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(kinds(&spqr(&k4).unwrap()), vec![NodeKind::R]);
        assert_eq!(
            kinds(&spqr(&ug(2, &[(0, 1), (0, 1), (1, 0)])).unwrap()),
            vec![NodeKind::P]
        );
        assert!(spqr(&ug(3, &[(0, 1), (1, 2)])).is_err());
    }

    #[test]
    fn cycle_with_chord() {
        // C4 plus chord 0-2: two triangles glued by a P-node.
        let t = spqr(&ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])).unwrap();
        assert_eq!(kinds(&t), vec![NodeKind::P, NodeKind::S, NodeKind::S]);
        assert_eq!(t.tree_edges.len(), 2);
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinless::spqr::{spqr, NodeKind, SkelTag, SpqrTree};
use twinless::UGraph;

/// Random biconnected multigraph: a cycle plus random ears and parallel copies.
fn random_biconnected(rng: &mut ChaCha8Rng, n0: usize, ears: usize) -> UGraph {
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
        let len = rng.gen_range(0..3);
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

fn connected_without(n: usize, edges: &[(usize, usize)], gone: &[usize]) -> bool {
    let keep: Vec<usize> = (0..n).filter(|v| !gone.contains(v)).collect();
    if keep.is_empty() {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![keep[0]];
    seen[keep[0]] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !gone.contains(&y) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    keep.iter().all(|&v| seen[v])
}

fn validate(g: &UGraph, t: &SpqrTree) {
    let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut real_seen = vec![0usize; g.m()];
    for (ni, node) in t.nodes.iter().enumerate() {
        assert_eq!(node.edges.len(), node.tags.len());
        for (i, tag) in node.tags.iter().enumerate() {
            match *tag {
                SkelTag::Real(e) => {
                    real_seen[e] += 1;
                    assert_eq!(key(node.edges[i]), key(g.edges[e]));
                }
                SkelTag::Virtual {
                    twin_node,
                    twin_index,
                } => {
                    let tw = &t.nodes[twin_node];
                    assert_eq!(
                        tw.tags[twin_index],
                        SkelTag::Virtual {
                            twin_node: ni,
                            twin_index: i
                        }
                    );
                    assert_eq!(key(tw.edges[twin_index]), key(node.edges[i]));
                    assert_ne!(twin_node, ni);
                }
            }
        }
        let vs = node.vertices();
        match node.kind {
            NodeKind::S => {
                let k = node.edges.len();
                assert!(k >= 3);
                assert_eq!(vs.len(), k);
                for i in 0..k {
                    assert_eq!(node.edges[i].1, node.edges[(i + 1) % k].0);
                }
            }
            NodeKind::P => {
                assert!(node.edges.len() >= 3);
                assert_eq!(vs.len(), 2);
            }
            NodeKind::R => {
                assert!(vs.len() >= 4);
                let mut keys: Vec<_> = node.edges.iter().map(|&e| key(e)).collect();
                keys.sort_unstable();
                let before = keys.len();
                keys.dedup();
                assert_eq!(before, keys.len(), "R skeleton not simple");
                let local: Vec<(usize, usize)> = node
                    .edges
                    .iter()
                    .map(|&(a, b)| (vs.binary_search(&a).unwrap(), vs.binary_search(&b).unwrap()))
                    .collect();
                for x in 0..vs.len() {
                    for y in x + 1..vs.len() {
                        assert!(
                            connected_without(vs.len(), &local, &[x, y]),
                            "R skeleton has a separation pair"
                        );
                    }
                }
            }
        }
    }
    assert!(
        real_seen.iter().all(|&c| c == 1),
        "real edges not partitioned: {real_seen:?}"
    );
    assert_eq!(t.tree_edges.len() + 1, t.nodes.len());
    assert!(connected_without(t.nodes.len(), &t.tree_edges, &[]));
    for &(a, b) in &t.tree_edges {
        let (ka, kb) = (t.nodes[a].kind, t.nodes[b].kind);
        assert!(!(ka == kb && ka != NodeKind::R), "adjacent {ka:?} nodes");
    }
}

#[test]
fn random_small_graphs_satisfy_spqr_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for round in 0..3000 {
        let n0 = rng.gen_range(3..7);
        let ears = rng.gen_range(0..8);
        let g = random_biconnected(&mut rng, n0, ears);
        let t = spqr(&g).unwrap_or_else(|e| panic!("round {round}: {e} on {g:?}"));
        validate(&g, &t);
    }
}

#[test]
fn dense_graphs_satisfy_spqr_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n0 = rng.gen_range(3..9);
        let g = random_biconnected(&mut rng, n0, 20);
        validate(&g, &spqr(&g).unwrap());
    }
}

#[test]
fn large_graph_runs_iteratively() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = random_biconnected(&mut rng, 100_000, 20_000);
    let t = spqr(&g).unwrap();
    let reals: usize = t.nodes.iter().map(|n| n.real_edges().count()).sum();
    assert_eq!(reals, g.m());
    assert_eq!(t.tree_edges.len() + 1, t.nodes.len());
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinless::oracles::{oracle_edge_resilient, oracle_orientable};
use twinless::orient::{split_and_gadget, split_and_twin};
use twinless::*;

const FAILURES: [FailureSet; 4] = [
    FailureSet::None,
    FailureSet::Directed,
    FailureSet::Undirected,
    FailureSet::Both,
];

fn random_mixed(rng: &mut ChaCha8Rng) -> MixedGraph {
    let n = rng.gen_range(1..=7);
    let d = rng.gen_range(0..=8);
    let u = rng.gen_range(0..=8);
    gen::mixed(rng, n, d, u)
}

#[test]
fn matches_oracles_on_random_mixed_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let g = random_mixed(&mut rng);
        let so = strongly_orientable_blocks(&g);
        assert_eq!(
            so,
            oracle_orientable(&g).unwrap(),
            "orientable blocks of {g:?}"
        );
        for f in FAILURES {
            let fast = edge_resilient_blocks_for(&g, f).unwrap();
            assert_eq!(
                fast,
                oracle_edge_resilient(&g, f).unwrap(),
                "{f:?} on {g:?}"
            );
            assert!(fast.refines(&so));
        }
    }
}

#[test]
fn independent_of_stored_endpoint_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let g = random_mixed(&mut rng);
        let mut flipped = g.clone();
        for e in flipped.undirected.iter_mut() {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
        for f in FAILURES {
            assert_eq!(
                edge_resilient_blocks_for(&g, f).unwrap(),
                edge_resilient_blocks_for(&flipped, f).unwrap()
            );
        }
    }
}

#[test]
fn directed_graphs_reduce_to_strong_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=9);
        let m = rng.gen_range(0..=20);
        let g = gen::uniform(&mut rng, n, m);
        let mg = MixedGraph::from_digraph(&g);
        // Without choices, orientable blocks are the SCCs and resilient ones
        // the 2-edge strongly connected components.
        assert_eq!(strongly_orientable_blocks(&mg), scc(&g).partition);
        assert_eq!(edge_resilient_blocks(&mg).unwrap(), two_escc(&g).unwrap());
    }
}

#[test]
fn reduced_graph_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let g = random_mixed(&mut rng);
        let (d, u) = (g.directed.len(), g.undirected.len());
        let r = split_and_gadget(&g);
        assert_eq!(r.graph.n, g.n + d + 3 * u);
        assert_eq!(r.graph.m(), 2 * d + 7 * u);
        assert!(r.critical.iter().all(Option::is_some));
        let t = split_and_twin(&g);
        assert_eq!(t.graph.n, g.n + d);
        assert_eq!(t.graph.m(), 2 * d + 2 * u);
    }
}

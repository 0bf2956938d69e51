use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinless::auxgraph::{build_final_family, classify_strong_bridges};
use twinless::gen;
use twinless::oracles::{oracle_2escc, oracle_2etscc};
use twinless::pipeline::{baseline_2etscc, two_escc, two_etscc};
use twinless::strong::scc_partition;
use twinless::{DiGraph, Partition};

fn random_sc(rng: &mut ChaCha8Rng) -> DiGraph {
    let n = rng.gen_range(2..=10);
    let m = rng.gen_range(n..=24);
    if rng.gen_bool(0.5) {
        gen::strongly_connected(rng, n, m)
    } else {
        gen::bridge_heavy(rng, n, m.min(24))
    }
}

#[test]
fn random_graphs_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for round in 0..3000 {
        let g = random_sc(&mut rng);
        let want = oracle_2etscc(&g);
        let got = two_etscc(&g).unwrap_or_else(|e| panic!("round {round}: {e} on {g:?}"));
        assert_eq!(got, want, "round {round}: 2etscc on {g:?}");
        assert_eq!(two_escc(&g).unwrap(), oracle_2escc(&g), "2escc on {g:?}");
        assert_eq!(baseline_2etscc(&g).unwrap(), want, "baseline on {g:?}");
    }
}

#[test]
fn family_members_satisfy_xe_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1500 {
        let g = random_sc(&mut rng);
        if g.n < 2 {
            continue;
        }
        let fam = build_final_family(&g, 0).unwrap();
        let mut oo: Vec<usize> = fam.iter().flat_map(|h| h.oo_origins()).collect();
        oo.sort_unstable();
        assert_eq!(
            oo,
            (0..g.n).collect::<Vec<_>>(),
            "oo sets do not partition V for {g:?}"
        );
        for h in &fam {
            if h.oo_vertices().len() < 2 {
                continue;
            }
            for c in classify_strong_bridges(h).unwrap() {
                let rest = h.graph.without_edge(c.edge);
                let got = scc_partition(&rest);
                let mut want: Vec<Vec<usize>> = c.set.iter().map(|&v| vec![v]).collect();
                want.push((0..h.graph.n).filter(|v| !c.set.contains(v)).collect());
                assert_eq!(got, Partition::from_blocks(want), "X_e of {c:?} in {h:?}");
            }
        }
    }
}

#[test]
fn arbitrary_digraphs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=16);
        let g = gen::uniform(&mut rng, n, m);
        assert_eq!(two_etscc(&g).unwrap(), oracle_2etscc(&g), "{g:?}");
        assert_eq!(two_escc(&g).unwrap(), oracle_2escc(&g), "{g:?}");
    }
}

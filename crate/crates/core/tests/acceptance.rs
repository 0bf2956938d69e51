//! Acceptance suite. Runs every criterion in sequence (the scaling
//! measurement must not share the machine with other tests), prints one
//! PASS/FAIL line per criterion and exits non-zero if any failed.

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinless::auxgraph::{build_final_family, classify_strong_bridges};
use twinless::gen;
use twinless::oracles::*;
use twinless::strong::scc_partition;
use twinless::*;

/// Largest allowed t(2m)/t(m) between consecutive benchmark sizes.
const MAX_DOUBLING_RATIO: f64 = 2.5;
/// Smallest allowed speedup over the baseline at m = 2^18.
const MIN_BASELINE_SPEEDUP: f64 = 10.0;
/// Timed runs per size; the minimum is reported.
const TIMING_RUNS: usize = 7;
const SCALING_EXPONENTS: std::ops::RangeInclusive<u32> = 14..=20;
const BASELINE_EXPONENT: u32 = 18;

const RANDOM_SC_GRAPHS: usize = 10_000;
const RANDOM_MIXED_GRAPHS: usize = 2_000;
const RANDOM_BICONNECTED_GRAPHS: usize = 2_000;
const ASSEMBLED_GRAPHS: usize = 1_000;

/// Outcome of one criterion: the first failure found, if any, plus a summary.
struct Outcome {
    failure: Option<String>,
    summary: String,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }
}

fn both_ok_and_equal(a: Result<Partition>, b: Result<Partition>) -> bool {
    matches!((a, b), (Ok(x), Ok(y)) if x == y)
}

fn outcome() -> Outcome {
    Outcome {
        failure: None,
        summary: String::new(),
    }
}

/// Criterion label and its check.
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 exhaustive n<=4 m<=6", exhaustive),
        ("2 random strongly connected", random_strongly_connected),
        ("3 mixed-graph reductions", mixed_graphs),
        ("4 marked vertex-edge blocks", marked_blocks),
        ("5 structural invariants", structural_invariants),
        ("6 scaling", scaling),
        ("7 baseline equivalence", baseline_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        match &o.failure {
            None => println!("PASS criterion {name}: {} [{secs:.1}s]", o.summary),
            Some(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {} [{secs:.1}s]; {why}", o.summary);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

/// Every multiset of at most `max_m` ordered pairs (loops included) over `n`
/// vertices. Edge order never changes a partition, so multisets cover all
/// labeled digraphs.
fn for_each_multigraph(n: usize, max_m: usize, mut visit: impl FnMut(&DiGraph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    fn rec(
        pairs: &[(usize, usize)],
        from: usize,
        left: usize,
        g: &mut DiGraph,
        visit: &mut dyn FnMut(&DiGraph),
    ) {
        visit(g);
        if left == 0 {
            return;
        }
        for i in from..pairs.len() {
            g.edges.push(pairs[i]);
            rec(pairs, i, left - 1, g, visit);
            g.edges.pop();
        }
    }
    rec(&pairs, 0, max_m, &mut DiGraph::new(n), &mut visit);
}

fn exhaustive() -> Outcome {
    let mut o = outcome();
    let mut count = 0usize;
    for n in 1..=4 {
        for_each_multigraph(n, 6, |g| {
            count += 1;
            o.check(two_etscc(g).ok() == Some(oracle_2etscc(g)), || {
                format!("2etscc differs on {g:?}")
            });
            o.check(two_escc(g).ok() == Some(oracle_2escc(g)), || {
                format!("2escc differs on {g:?}")
            });
            o.check(oracle_tscc_definitional(g).ok() == Some(tscc(g)), || {
                format!("tscc differs on {g:?}")
            });
        });
    }
    o.summary = format!("{count} digraphs, 2etscc/2escc/tscc exact");
    o
}

/// The criterion-2 suite: half uniform strongly connected, half bridge-heavy.
fn sc_suite() -> impl Iterator<Item = DiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2e75cc);
    (0..RANDOM_SC_GRAPHS).map(move |i| {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(n..=24);
        if i % 2 == 0 {
            gen::strongly_connected(&mut rng, n, m)
        } else {
            gen::bridge_heavy(&mut rng, n, m)
        }
    })
}

fn random_strongly_connected() -> Outcome {
    let mut o = outcome();
    let mut max_m = 0;
    for g in sc_suite() {
        max_m = max_m.max(g.m());
        o.check(
            g.n <= 10 && g.m() <= 24 && scc(&g).partition.len() == 1,
            || format!("generator produced {g:?}"),
        );
        o.check(two_etscc(&g).ok() == Some(oracle_2etscc(&g)), || {
            format!("2etscc differs on {g:?}")
        });
        o.check(two_escc(&g).ok() == Some(oracle_2escc(&g)), || {
            format!("2escc differs on {g:?}")
        });
        o.check(
            strong_bridges(&g).ok().map(|s| s.0) == Some(oracle_strong_bridges(&g)),
            || format!("strong bridges differ on {g:?}"),
        );
        o.check(
            twinless_strong_bridges(&g).ok().map(|s| s.0)
                == Some(oracle_twinless_strong_bridges(&g)),
            || format!("twinless strong bridges differ on {g:?}"),
        );
        for s in 0..g.n {
            let idom = dominator_tree(&g, s)
                .ok()
                .map(|t| t.idom.iter().map(|&d| Some(d)).collect::<Vec<_>>());
            o.check(idom == Some(oracle_idom(&g, s)), || {
                format!("dominators from {s} differ on {g:?}")
            });
        }
    }
    o.summary =
        format!("{RANDOM_SC_GRAPHS} graphs (max m {max_m}), 2etscc/2escc/E_s/E_t/dominators exact");
    o
}

fn mixed_graphs() -> Outcome {
    let mut o = outcome();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e1e);
    for _ in 0..RANDOM_MIXED_GRAPHS {
        let n = rng.gen_range(1..=7);
        let (d, u) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let g = gen::mixed(&mut rng, n, d, u);
        o.check(
            Some(strongly_orientable_blocks(&g)) == oracle_orientable(&g).ok(),
            || format!("orient differs on {g:?}"),
        );
        for f in [
            FailureSet::Both,
            FailureSet::Directed,
            FailureSet::Undirected,
        ] {
            let got = if f == FailureSet::Both {
                edge_resilient_blocks(&g)
            } else {
                edge_resilient_blocks_for(&g, f)
            };
            o.check(both_ok_and_equal(got, oracle_edge_resilient(&g, f)), || {
                format!("resilient ({f:?}) differs on {g:?}")
            });
        }
    }
    o.summary = format!("{RANDOM_MIXED_GRAPHS} graphs, orient and resilient (both/directed/undirected failures) exact");
    o
}

fn random_marks(rng: &mut ChaCha8Rng, g: &UGraph) -> Vec<usize> {
    let arts = oracle_articulation(g);
    let p = rng.gen_range(0.0..0.5);
    (0..g.n)
        .filter(|v| !arts.contains(v) && rng.gen_bool(p))
        .collect()
}

/// Biconnected pieces and parallel bundles glued at single vertices, with
/// occasional pendant edges and separate components.
fn assembled_graph(rng: &mut ChaCha8Rng) -> UGraph {
    let mut g = UGraph::new(0);
    for _ in 0..rng.gen_range(1..4) {
        let piece = if rng.gen_bool(1.0 / 3.0) {
            UGraph::from_edges(2, vec![(0, 1); rng.gen_range(1..3)])
        } else {
            let (n0, ears) = (rng.gen_range(3..5), rng.gen_range(0..3));
            gen::biconnected_graph(rng, n0, ears, 5)
        };
        let off = g.n;
        let attach = if g.n > 0 && rng.gen_bool(0.8) {
            Some(rng.gen_range(0..g.n))
        } else {
            None
        };
        let shared = usize::from(attach.is_some());
        let map = |x: usize| {
            if x == 0 {
                attach.unwrap_or(off)
            } else {
                off + x - shared
            }
        };
        g.n += piece.n - shared;
        for &(a, b) in &piece.edges {
            g.add_edge(map(a), map(b));
        }
        if rng.gen_bool(0.2) {
            let v = rng.gen_range(0..g.n);
            let w = g.n;
            g.n += 1;
            g.add_edge(v, w);
        }
    }
    g
}

fn marked_blocks() -> Outcome {
    let mut o = outcome();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3eb);
    for _ in 0..RANDOM_BICONNECTED_GRAPHS {
        let (n0, ears) = (rng.gen_range(3..8), rng.gen_range(0..7));
        let g = gen::biconnected_graph(&mut rng, n0, ears, 12);
        let marked = random_marks(&mut rng, &g);
        o.check(
            marked_veb(&g, &marked).ok() == Some(oracle_mveb(&g, &marked)),
            || format!("mveb differs on {g:?} marked {marked:?}"),
        );
    }
    let mut assembled = 0;
    while assembled < ASSEMBLED_GRAPHS {
        let g = assembled_graph(&mut rng);
        if g.n > 12 {
            continue;
        }
        assembled += 1;
        let marked = random_marks(&mut rng, &g);
        o.check(
            marked_veb(&g, &marked).ok() == Some(oracle_mveb(&g, &marked)),
            || format!("mveb differs on {g:?} marked {marked:?}"),
        );
    }
    o.summary = format!(
        "{RANDOM_BICONNECTED_GRAPHS} biconnected + {ASSEMBLED_GRAPHS} assembled graphs exact"
    );
    o
}

fn covers(p: &Partition, n: usize) -> bool {
    let mut ground = p.ground();
    ground.sort_unstable();
    ground == (0..n).collect::<Vec<_>>()
}

fn meet_laws(p: &Partition, q: &Partition, n: usize) -> bool {
    let Ok(r) = p.refine(q) else { return false };
    r.refines(p)
        && r.refines(q)
        && q.refine(p).ok().as_ref() == Some(&r)
        && r.refine(&r).ok().as_ref() == Some(&r)
        && (0..n).all(|x| {
            (0..n).all(|y| r.same_block(x, y) == (p.same_block(x, y) && q.same_block(x, y)))
        })
}

fn structural_invariants() -> Outcome {
    let mut o = outcome();
    let (mut members, mut bridges, mut escc_not_in_tscc) = (0usize, 0usize, 0usize);
    for g in sc_suite() {
        let fam = match build_final_family(&g, 0) {
            Ok(f) => f,
            Err(e) => {
                o.check(false, || format!("auxiliary family failed on {g:?}: {e}"));
                continue;
            }
        };
        let mut oo: Vec<usize> = fam.iter().flat_map(|h| h.oo_origins()).collect();
        oo.sort_unstable();
        o.check(oo == (0..g.n).collect::<Vec<_>>(), || {
            format!("oo sets do not partition V for {g:?}")
        });
        for h in &fam {
            members += 1;
            if h.oo_vertices().len() < 2 {
                continue;
            }
            let Ok(classes) = classify_strong_bridges(h) else {
                o.check(false, || format!("X_e classification failed in {h:?}"));
                continue;
            };
            for c in classes {
                bridges += 1;
                let mut want: Vec<Vec<usize>> = c.set.iter().map(|&v| vec![v]).collect();
                want.push((0..h.graph.n).filter(|v| !c.set.contains(v)).collect());
                o.check(
                    scc_partition(&h.graph.without_edge(c.edge)) == Partition::from_blocks(want),
                    || format!("X_e of {c:?} in {h:?}"),
                );
            }
        }

        let s = scc(&g).partition;
        let t = tscc(&g);
        let e = two_escc(&g).unwrap_or_else(|_| Partition::single(0..0));
        let et = two_etscc(&g).unwrap_or_else(|_| Partition::single(0..0));
        for p in [&s, &t, &e, &et] {
            o.check(covers(p, g.n), || {
                format!("partition {p:?} does not cover V of {g:?}")
            });
        }
        o.check(
            et.refines(&e) && et.refines(&t) && e.refines(&s) && t.refines(&s),
            || format!("refinement chain broken on {g:?}"),
        );
        if !e.refines(&t) {
            escc_not_in_tscc += 1;
        }
        o.check(meet_laws(&e, &t, g.n) && meet_laws(&et, &s, g.n), || {
            format!("partition laws broken on {g:?}")
        });
    }
    o.summary = format!(
        "{RANDOM_SC_GRAPHS} graphs, {members} family members, {bridges} X_e sets checked; \
         2etscc refines 2escc and tscc, both refine scc ({escc_not_in_tscc} graphs where 2escc does not refine tscc)"
    );
    o
}

fn time_2etscc(g: &DiGraph) -> Duration {
    let start = Instant::now();
    let p = two_etscc(g).expect("2etscc on a generated graph");
    let d = start.elapsed();
    std::hint::black_box(p);
    d
}

fn scaling_graph(k: u32) -> DiGraph {
    let m = 1usize << k;
    gen::strongly_connected(&mut ChaCha8Rng::seed_from_u64(u64::from(k)), m / 4, m)
}

fn scaling() -> Outcome {
    let mut o = outcome();
    let graphs: Vec<DiGraph> = SCALING_EXPONENTS.map(scaling_graph).collect();
    let mut best = vec![Duration::MAX; graphs.len()];
    // Each consecutive pair is timed alternately so slow drifts in machine
    // load hit both sizes alike.
    let mut ratios = Vec::new();
    for i in 0..graphs.len() - 1 {
        let (mut a, mut b) = (Duration::MAX, Duration::MAX);
        for _ in 0..TIMING_RUNS {
            a = a.min(time_2etscc(&graphs[i]));
            b = b.min(time_2etscc(&graphs[i + 1]));
        }
        best[i] = best[i].min(a);
        best[i + 1] = best[i + 1].min(b);
        let ratio = b.as_secs_f64() / a.as_secs_f64();
        let k = SCALING_EXPONENTS.start() + i as u32;
        o.check(ratio <= MAX_DOUBLING_RATIO, || {
            format!(
                "t(2^{})/t(2^{k}) = {ratio:.2} > {MAX_DOUBLING_RATIO}",
                k + 1
            )
        });
        ratios.push(format!("{ratio:.2}"));
    }

    let bi = (BASELINE_EXPONENT - SCALING_EXPONENTS.start()) as usize;
    let start = Instant::now();
    let base = baseline_2etscc(&graphs[bi]).expect("baseline on a generated graph");
    let base_time = start.elapsed();
    o.check(two_etscc(&graphs[bi]).ok().as_ref() == Some(&base), || {
        "baseline partition differs at 2^18".to_string()
    });
    let speedup = base_time.as_secs_f64() / best[bi].as_secs_f64();
    o.check(speedup >= MIN_BASELINE_SPEEDUP, || {
        format!("speedup {speedup:.1} < {MIN_BASELINE_SPEEDUP} at 2^{BASELINE_EXPONENT}")
    });

    let times: Vec<String> = best
        .iter()
        .map(|d| format!("{:.3}", d.as_secs_f64()))
        .collect();
    o.summary = format!(
        "min-of-{TIMING_RUNS} seconds [{}], ratios [{}] (bound {MAX_DOUBLING_RATIO}), baseline {:.1}s at 2^{BASELINE_EXPONENT} = {speedup:.0}x (bound {MIN_BASELINE_SPEEDUP}x)",
        times.join(", "),
        ratios.join(", "),
        base_time.as_secs_f64()
    );
    o
}

fn baseline_equivalence() -> Outcome {
    let mut o = outcome();
    for g in sc_suite() {
        o.check(
            both_ok_and_equal(two_etscc(&g), baseline_2etscc(&g)),
            || format!("baseline differs on {g:?}"),
        );
    }
    o.summary = format!("{RANDOM_SC_GRAPHS} graphs identical");
    o
}

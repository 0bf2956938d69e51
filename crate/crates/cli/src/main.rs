use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use twinless::auxgraph::build_final_family;
use twinless::io::{parse_graph, render_graph, to_json, ParsedGraph};
use twinless::oracles;
use twinless::spqr::{spqr, NodeKind, SkelTag};
use twinless::{gen, pipeline, DiGraph, EdgeSet, FailureSet, MixedGraph, Partition, UGraph};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser)]
#[command(
    name = "twinless",
    version,
    about = "Twinless strong connectivity and orientation blocks"
)]
struct Cli {
    /// Input graph file, `-` for stdin.
    #[arg(long = "in", global = true, default_value = "-")]
    input: String,
    /// Output file, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// JSON output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generators and benchmarks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Recompute the result with the brute-force oracle and fail on mismatch.
    #[arg(long, global = true)]
    check_oracle: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Strongly connected components.
    Scc,
    /// Twinless strongly connected components.
    Tscc,
    /// 2-edge strongly connected components.
    #[command(name = "2escc")]
    TwoEscc,
    /// 2-edge twinless strongly connected components.
    #[command(name = "2etscc")]
    TwoEtscc {
        /// Use the quadratic refinement over twinless strong bridges.
        #[arg(long)]
        baseline: bool,
    },
    /// Strong bridges of a strongly connected digraph.
    StrongBridges,
    /// Edges whose deletion increases the number of twinless SCCs.
    TwinlessStrongBridges,
    /// Immediate dominators of a flow graph.
    Dominators {
        #[arg(long, default_value_t = 0)]
        source: usize,
    },
    /// Cactus of the 3-edge-connected classes (edges read as undirected).
    Cactus,
    /// SPQR tree of a biconnected graph (edges read as undirected).
    Spqr,
    /// Marked vertex-edge blocks (edges read as undirected).
    Mveb {
        /// Comma-separated marked vertices.
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
    },
    /// Final auxiliary graphs of a strongly connected digraph.
    Aux {
        #[arg(long, default_value_t = 0)]
        source: usize,
        /// Print every auxiliary graph in full as JSON.
        #[arg(long)]
        dump: bool,
    },
    /// Strongly orientable blocks of a mixed graph.
    OrientBlocks,
    /// Edge-resilient strongly orientable blocks of a mixed graph.
    ResilientBlocks {
        /// Which edges may fail.
        #[arg(long, value_enum, default_value = "both")]
        fail: Fail,
    },
    /// Random graph generator.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "er")]
        model: Model,
    },
    /// Timing of 2etscc on random strongly connected digraphs with n = m/4.
    Bench {
        /// Edge counts: `2^a..2^b` or a comma-separated list.
        #[arg(long, default_value = "2^14..2^20")]
        sizes: String,
        /// Runs per size; the minimum is reported.
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        /// Also time the baseline at this edge count.
        #[arg(long)]
        baseline_at: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fail {
    None,
    Directed,
    Undirected,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Uniform random digraph.
    Er,
    /// Uniform random digraph made strongly connected by a Hamiltonian cycle.
    Sc,
    /// Strongly connected digraph biased toward strong bridges and twins.
    Bridgey,
    /// Mixed graph with half of the edges undirected.
    Mixed,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Precondition(String),
    Mismatch(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Precondition(_) => 4,
            Failure::Mismatch(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Parse(m)
            | Failure::Precondition(m)
            | Failure::Mismatch(m)
            | Failure::Internal(m) => m,
        }
    }
}

impl From<twinless::Error> for Failure {
    fn from(e: twinless::Error) -> Self {
        use twinless::Error as E;
        match e {
            E::Parse { .. } => Failure::Parse(e.to_string()),
            E::Precondition(_) | E::OracleLimit(_) | E::GroundSetMismatch => {
                Failure::Precondition(e.to_string())
            }
            E::Invariant(_) => Failure::Internal(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| write_out(&cli.out, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_input(path: &str) -> Run<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    } else {
        text =
            fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn write_out(path: &str, text: &str) -> Run<()> {
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string()))
    } else {
        fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {path}: {e}")))
    }
}

fn graph(cli: &Cli) -> Run<ParsedGraph> {
    Ok(parse_graph(&read_input(&cli.input)?)?)
}

fn directed(cli: &Cli) -> Run<DiGraph> {
    Ok(graph(cli)?.into_directed()?)
}

fn mixed(cli: &Cli) -> Run<MixedGraph> {
    Ok(graph(cli)?.into_mixed())
}

/// Every edge read as undirected, directed ones first.
fn undirected(cli: &Cli) -> Run<UGraph> {
    let g = mixed(cli)?;
    Ok(UGraph::from_edges(
        g.n,
        g.directed.iter().chain(&g.undirected).copied().collect(),
    ))
}

fn check<T: PartialEq + std::fmt::Debug>(
    cli: &Cli,
    fast: &T,
    oracle: impl FnOnce() -> Run<T>,
) -> Run<()> {
    if !cli.check_oracle {
        return Ok(());
    }
    let expected = oracle()?;
    if *fast != expected {
        return Err(Failure::Mismatch(format!(
            "oracle disagrees: fast {fast:?}, oracle {expected:?}"
        )));
    }
    Ok(())
}

fn partition_out(cli: &Cli, p: &Partition) -> String {
    if cli.json {
        p.to_json() + "\n"
    } else {
        p.to_text()
    }
}

fn edges_out(cli: &Cli, g: &DiGraph, es: &EdgeSet) -> String {
    if cli.json {
        let v: Vec<_> = es
            .iter()
            .map(|e| json!({"id": e, "tail": g.edges[e].0, "head": g.edges[e].1}))
            .collect();
        serde_json::Value::Array(v).to_string() + "\n"
    } else {
        es.iter()
            .map(|e| format!("{e} {} {}\n", g.edges[e].0, g.edges[e].1))
            .collect()
    }
}

fn run(cli: &Cli) -> Run<String> {
    match &cli.cmd {
        Cmd::Scc => {
            let g = directed(cli)?;
            let p = twinless::scc(&g).partition;
            check(cli, &p, || Ok(oracles::oracle_scc(&g)))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::Tscc => {
            let g = directed(cli)?;
            let p = twinless::tscc(&g);
            check(cli, &p, || Ok(oracles::oracle_tscc(&g)))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::TwoEscc => {
            let g = directed(cli)?;
            let p = pipeline::two_escc(&g)?;
            check(cli, &p, || Ok(oracles::oracle_2escc(&g)))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::TwoEtscc { baseline } => {
            let g = directed(cli)?;
            let p = if *baseline {
                pipeline::baseline_2etscc(&g)?
            } else {
                pipeline::two_etscc(&g)?
            };
            check(cli, &p, || Ok(oracles::oracle_2etscc(&g)))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::StrongBridges => {
            let g = directed(cli)?;
            let es = twinless::strong_bridges(&g)?;
            check(cli, &es.0, || Ok(oracles::oracle_strong_bridges(&g)))?;
            Ok(edges_out(cli, &g, &es))
        }
        Cmd::TwinlessStrongBridges => {
            let g = directed(cli)?;
            let es = twinless::twinless_strong_bridges(&g)?;
            check(cli, &es.0, || {
                Ok(oracles::oracle_twinless_strong_bridges(&g))
            })?;
            Ok(edges_out(cli, &g, &es))
        }
        Cmd::Dominators { source } => {
            let g = directed(cli)?;
            let t = twinless::dominator_tree(&g, *source)?;
            // The source is its own immediate dominator, as in the oracle.
            let idom: Vec<Option<usize>> = t.idom.iter().map(|&d| Some(d)).collect();
            check(cli, &idom, || Ok(oracles::oracle_idom(&g, *source)))?;
            if cli.json {
                Ok(json!({"source": source, "idom": t.idom}).to_string() + "\n")
            } else {
                Ok((0..g.n)
                    .filter(|&v| v != *source)
                    .map(|v| format!("{v} {}\n", t.idom[v]))
                    .collect())
            }
        }
        Cmd::Cactus => {
            let g = undirected(cli)?;
            let c = twinless::three_ecc_cactus(&g)?;
            check(cli, &c.classes(), || Ok(oracles::oracle_3ecc(&g)))?;
            if cli.json {
                return Ok(serde_json::to_string(&c).expect("serializable") + "\n");
            }
            let mut s = String::new();
            for (i, b) in c.classes().blocks().iter().enumerate() {
                s += &format!("node {i}: {}\n", join(b));
            }
            for (j, cyc) in c.cycles.iter().enumerate() {
                let es: Vec<String> = cyc
                    .iter()
                    .map(|&k| format!("{}-{}", c.edges[k].a, c.edges[k].b))
                    .collect();
                s += &format!("cycle {j}: {}\n", es.join(" "));
            }
            Ok(s)
        }
        Cmd::Spqr => {
            let g = undirected(cli)?;
            let t = spqr(&g)?;
            if cli.check_oracle {
                eprintln!("note: spqr has no oracle; structural checks live in the test suite");
            }
            if cli.json {
                return Ok(serde_json::to_string(&t).expect("serializable") + "\n");
            }
            let mut s = String::new();
            for (i, nd) in t.nodes.iter().enumerate() {
                let kind = match nd.kind {
                    NodeKind::S => "S",
                    NodeKind::P => "P",
                    NodeKind::R => "R",
                };
                let es: Vec<String> = nd
                    .edges
                    .iter()
                    .zip(&nd.tags)
                    .map(|(&(a, b), tag)| match *tag {
                        SkelTag::Real(e) => format!("{a}-{b}#{e}"),
                        SkelTag::Virtual { twin_node, .. } => format!("{a}-{b}@{twin_node}"),
                    })
                    .collect();
                s += &format!("node {i} {kind}: {}\n", es.join(" "));
            }
            for &(a, b) in &t.tree_edges {
                s += &format!("tree {a} {b}\n");
            }
            Ok(s)
        }
        Cmd::Mveb { marked } => {
            let g = undirected(cli)?;
            let p = twinless::marked_veb(&g, marked)?;
            check(cli, &p, || Ok(oracles::oracle_mveb(&g, marked)))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::Aux { source, dump } => {
            let g = directed(cli)?;
            let fam = build_final_family(&g, *source)?;
            let oo = Partition::from_blocks(
                fam.iter()
                    .map(|h| h.oo_origins())
                    .filter(|b| !b.is_empty())
                    .collect(),
            );
            check(cli, &oo, || Ok(oracles::oracle_2escc(&g)))?;
            if *dump {
                return Ok(serde_json::to_string(&fam).expect("serializable") + "\n");
            }
            if cli.json {
                let v: Vec<_> = fam
                    .iter()
                    .map(|h| json!({"level": h.level, "roots": h.roots, "n": h.graph.n, "m": h.graph.m(), "oo": h.oo_origins()}))
                    .collect();
                return Ok(serde_json::Value::Array(v).to_string() + "\n");
            }
            Ok(fam
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    format!(
                        "graph {i} {:?} n={} m={} oo: {}\n",
                        h.level,
                        h.graph.n,
                        h.graph.m(),
                        join(&h.oo_origins())
                    )
                })
                .collect())
        }
        Cmd::OrientBlocks => {
            let g = mixed(cli)?;
            let p = twinless::strongly_orientable_blocks(&g);
            check(cli, &p, || Ok(oracles::oracle_orientable(&g)?))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::ResilientBlocks { fail } => {
            let g = mixed(cli)?;
            let f = match fail {
                Fail::None => FailureSet::None,
                Fail::Directed => FailureSet::Directed,
                Fail::Undirected => FailureSet::Undirected,
                Fail::Both => FailureSet::Both,
            };
            let p = twinless::edge_resilient_blocks_for(&g, f)?;
            check(cli, &p, || Ok(oracles::oracle_edge_resilient(&g, f)?))?;
            Ok(partition_out(cli, &p))
        }
        Cmd::Gen { n, m, model } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let g = match model {
                Model::Er => ParsedGraph::Directed(gen::uniform(&mut rng, *n, *m)),
                Model::Sc => ParsedGraph::Directed(gen::strongly_connected(&mut rng, *n, *m)),
                Model::Bridgey => ParsedGraph::Directed(gen::bridge_heavy(&mut rng, *n, *m)),
                Model::Mixed => ParsedGraph::Mixed(gen::mixed(&mut rng, *n, m - m / 2, m / 2)),
            };
            Ok(if cli.json {
                to_json(&g.into_mixed()) + "\n"
            } else {
                render_graph(&g)
            })
        }
        Cmd::Bench {
            sizes,
            repeat,
            baseline_at,
        } => bench(cli, sizes, (*repeat).max(1), baseline_at.as_deref()),
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `2^a..2^b` (inclusive) or a comma-separated list of counts or powers.
fn parse_sizes(text: &str) -> Run<Vec<usize>> {
    let one = |t: &str| -> Run<usize> {
        let t = t.trim();
        let bad = || Failure::Usage(format!("bad size `{t}`"));
        match t.strip_prefix("2^") {
            Some(e) => e
                .parse::<u32>()
                .ok()
                .filter(|&e| e < 40)
                .map(|e| 1usize << e)
                .ok_or_else(bad),
            None => t.parse().map_err(|_| bad()),
        }
    };
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (one(a)?, one(b)?);
        if !a.is_power_of_two() || !b.is_power_of_two() || a > b {
            return Err(Failure::Usage(format!("bad size range `{text}`")));
        }
        return Ok((a.trailing_zeros()..=b.trailing_zeros())
            .map(|e| 1usize << e)
            .collect());
    }
    text.split(',').map(one).collect()
}

fn bench_graph(seed: u64, m: usize) -> DiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
    gen::strongly_connected(&mut rng, (m / 4).max(2), m)
}

fn min_time(repeat: usize, mut f: impl FnMut() -> Run<()>) -> Run<f64> {
    let mut best = f64::INFINITY;
    for _ in 0..repeat {
        let t = Instant::now();
        f()?;
        best = best.min(t.elapsed().as_secs_f64());
    }
    Ok(best)
}

fn bench(cli: &Cli, sizes: &str, repeat: usize, baseline_at: Option<&str>) -> Run<String> {
    let sizes = parse_sizes(sizes)?;
    let mut rows = Vec::new();
    let mut prev: Option<f64> = None;
    for &m in &sizes {
        let g = bench_graph(cli.seed, m);
        let t = min_time(repeat, || {
            pipeline::two_etscc(&g).map(|_| ()).map_err(Failure::from)
        })?;
        rows.push((m, g.n, t, prev.map(|p| t / p)));
        prev = Some(t);
    }
    let base = match baseline_at {
        None => None,
        Some(s) => {
            let m = parse_sizes(s)?
                .first()
                .copied()
                .ok_or_else(|| Failure::Usage("empty baseline size".into()))?;
            let g = bench_graph(cli.seed, m);
            let fast = min_time(repeat, || {
                pipeline::two_etscc(&g).map(|_| ()).map_err(Failure::from)
            })?;
            let slow = min_time(1, || {
                pipeline::baseline_2etscc(&g)
                    .map(|_| ())
                    .map_err(Failure::from)
            })?;
            Some((m, fast, slow))
        }
    };
    if cli.json {
        let v: Vec<_> = rows
            .iter()
            .map(|&(m, n, t, r)| json!({"m": m, "n": n, "seconds": t, "ratio": r}))
            .collect();
        let b = base.map(|(m, f, s)| json!({"m": m, "fast": f, "baseline": s, "speedup": s / f}));
        return Ok(json!({"sizes": v, "baseline": b}).to_string() + "\n");
    }
    let mut s = String::from("m\tn\tseconds\tratio\n");
    for (m, n, t, r) in rows {
        s += &format!(
            "{m}\t{n}\t{t:.4}\t{}\n",
            r.map_or("-".to_string(), |r| format!("{r:.2}"))
        );
    }
    if let Some((m, f, b)) = base {
        s += &format!(
            "baseline m={m}: fast {f:.4}s, baseline {b:.4}s, speedup {:.1}x\n",
            b / f
        );
    }
    Ok(s)
}

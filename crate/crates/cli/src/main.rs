//! `rubble`: exact rubbling computations from the command line.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rubbling::graph::GraphSpec;
use rubbling::ladder::{collapse, smooth_fully, smoothing_move, LadderLayout};
use rubbling::reduction::{reduce_at, reduce_with, ReduceOptions, WindowLabels};
use rubbling::search::{all_k_optimal_witnesses, k_optimal_with, ResultsCache, SearchConfig, SearchResult};
use rubbling::theorems::{verify_family, FormulaFamily, VerifyOptions};
use rubbling::{Distribution, Engine, ExecMode, Graph, RubbleError};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "rubble", version, about = "Exact graph rubbling: reachability, solvability, optimal numbers")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Results cache file for optimal values.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<String>,
    /// Worker threads for parallel search.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Seed for `random:SIZE` distributions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Most pebbles that can be moved onto a vertex.
    Reach {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dist: String,
        #[arg(long)]
        target: usize,
        /// Also print a sequence achieving the maximum.
        #[arg(long)]
        witness: bool,
    },
    /// Per-vertex k-reachability and overall k-solvability.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dist: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Optimal (or k-optimal) rubbling number by exhaustive search.
    Optimal {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Compare a closed-form family value against search.
    Verify {
        #[arg(long)]
        family: String,
        /// Inclusive range, e.g. `2..6`.
        #[arg(long)]
        range: String,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Window reduction of a ladder distribution.
    Reduce {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dist: String,
        /// Left neighbor rung of the window; default tries the fullest window first.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Optimal distributions as DOT or JSON.
    Witness {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Every canonical optimal distribution instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Collapse blocks of vertices and carry the distribution along.
    Collapse {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dist: String,
        /// JSON list of blocks, e.g. `[[0,1],[2,3]]`; default collapses rungs.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Smoothing moves on degree-2 vertices.
    Smooth {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dist: String,
        /// Smooth only this vertex once; default smooths until none is eligible.
        #[arg(long)]
        vertex: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<RubbleError> for Failure {
    fn from(e: RubbleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Context {
    json: bool,
    seed: u64,
    mode: ExecMode,
    cache: Option<ResultsCache>,
}

/// Writes to stdout, ignoring a closed pipe.
fn out(s: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush());
}

impl Context {
    fn emit(&self, value: serde_json::Value, text: String) {
        if self.json {
            out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
        } else {
            out(&text);
        }
    }

    fn search(&mut self, g: &Graph, k: u32, budget: Option<f64>) -> Result<SearchResult, Failure> {
        let config =
            SearchConfig { mode: self.mode, deadline: budget.map(Duration::from_secs_f64), smoothing_skip: None };
        Ok(match self.cache.as_mut() {
            Some(c) => c.k_optimal(g, k, &config)?,
            None => k_optimal_with(g, k, &config)?,
        })
    }
}

fn parse_graph(s: &str) -> Result<Graph, Failure> {
    Ok(GraphSpec::from_str(s)?.build()?)
}

/// `[c0, c1, ...]`, `{"counts": [...]}` or `random:SIZE`.
fn parse_dist(s: &str, g: &Graph, seed: u64) -> Result<Distribution, Failure> {
    let s = s.trim();
    let p = if let Some(size) = s.strip_prefix("random:") {
        let size: u32 = size.parse().map_err(|_| Failure::Usage(format!("bad random size in {s:?}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u32; g.vertex_count()];
        for _ in 0..size {
            counts[rng.gen_range(0..g.vertex_count())] += 1;
        }
        Distribution::new(counts)
    } else {
        serde_json::from_str(s).map_err(|e| Failure::Usage(format!("distribution JSON: {e}")))?
    };
    p.check_against(g)?;
    Ok(p)
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("range must look like A..B, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rubbling::par::configure_threads(n);
    }
    let cache = cli.cache.as_deref().map(ResultsCache::open).transpose()?;
    let mode = if cli.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let mut ctx = Context { json: cli.json, seed: cli.seed, mode, cache };
    let result = dispatch(&mut ctx, cli.command);
    if let Some(c) = &ctx.cache {
        c.save()?;
    }
    result
}

fn dispatch(ctx: &mut Context, command: Command) -> Outcome {
    match command {
        Command::Reach { graph, dist, target, witness } => {
            let g = parse_graph(&graph)?;
            let p = parse_dist(&dist, &g, ctx.seed)?;
            let r = Engine::new(&g).max_pebbles_to(&p, target)?;
            let seq = r.witness.filter(|_| witness);
            let mut text = format!("{}\n", r.max_pebbles);
            if let Some(s) = &seq {
                for m in s.moves() {
                    text.push_str(&format!("  {}\n", serde_json::to_string(m).expect("json")));
                }
            }
            ctx.emit(
                json!({"graph": g.descriptor(), "target": target, "max_pebbles": r.max_pebbles, "witness": seq}),
                text,
            );
        }
        Command::Solve { graph, dist, k } => {
            let g = parse_graph(&graph)?;
            let p = parse_dist(&dist, &g, ctx.seed)?;
            if k == 0 {
                return Err(Failure::Usage("k must be at least 1".into()));
            }
            let profile = Engine::new(&g).reach_profile(&p)?;
            let solvable = profile.iter().all(|&m| m >= k);
            let rows: Vec<_> = profile
                .iter()
                .enumerate()
                .map(|(v, &m)| json!({"vertex": v, "max_pebbles": m, "reachable": m >= k}))
                .collect();
            let mut text = String::new();
            for (v, &m) in profile.iter().enumerate() {
                text.push_str(&format!("{v}: {} (max {m})\n", if m >= k { "reachable" } else { "unreachable" }));
            }
            text.push_str(&format!("{}-solvable: {solvable}\n", k));
            ctx.emit(json!({"graph": g.descriptor(), "k": k, "solvable": solvable, "vertices": rows}), text);
        }
        Command::Optimal { graph, k, budget } => {
            let g = parse_graph(&graph)?;
            let r = ctx.search(&g, k, budget)?;
            let text = format!(
                "{}\nwitness {:?}\ntested {} canonical distributions in {} ms\n",
                r.value,
                r.witness.counts(),
                r.tested_count,
                r.elapsed.as_millis()
            );
            let mut value = serde_json::to_value(&r).expect("json");
            value["graph"] = json!(g.descriptor());
            value["k"] = json!(k);
            ctx.emit(value, text);
        }
        Command::Verify { family, range, budget } => {
            let family: FormulaFamily = family.parse()?;
            let range = parse_range(&range)?;
            let options = VerifyOptions { mode: ctx.mode, budget: budget.map(Duration::from_secs_f64) };
            let report = verify_family(family, range, options, ctx.cache.as_mut())?;
            ctx.emit(serde_json::to_value(&report).expect("json"), report.to_markdown());
            if report.has_mismatch() {
                return Err(Failure::Mismatch(format!("{family}: formula and search disagree")));
            }
        }
        Command::Reduce { graph, dist, window } => {
            let g = parse_graph(&graph)?;
            let layout = LadderLayout::new(&g)?;
            let p = parse_dist(&dist, &g, ctx.seed)?;
            let options = ReduceOptions { mode: ctx.mode };
            let report = match window {
                Some(a) => reduce_at(&layout, &p, &WindowLabels::with_left_neighbor(a), options)?
                    .ok_or_else(|| Failure::Usage(format!("no certified candidate for the window after rung {a}")))?,
                None => reduce_with(&layout, &p, options)?,
            };
            let inst = &report.instance;
            let deltas: Vec<String> = report.inequalities.modified.iter().map(|d| d.to_string()).collect();
            let text = format!(
                "window rungs {:?} (holds {})\ncertificate {:?}\nmethod {:?}\nreduced {:?}\nweight deltas {}\n",
                inst.window.window_rungs(),
                report.window_total,
                inst.certificate.expect("certified"),
                inst.method,
                inst.reduced_distribution.counts(),
                deltas.join(" ")
            );
            ctx.emit(serde_json::to_value(&report).expect("json"), text);
        }
        Command::Witness { graph, k, format, all } => {
            let g = parse_graph(&graph)?;
            let first = ctx.search(&g, k, None)?;
            let witnesses = if all {
                all_k_optimal_witnesses(&g, k, &SearchConfig { mode: ctx.mode, ..Default::default() })?
            } else {
                vec![first.witness.clone()]
            };
            match (format, ctx.json) {
                (Format::Json, _) | (_, true) => {
                    let value = json!({"graph": g.descriptor(), "k": k, "value": first.value, "witnesses": witnesses});
                    out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
                }
                (Format::Dot, false) => {
                    for w in &witnesses {
                        out(&g.to_dot(Some(w.counts())));
                    }
                }
            }
        }
        Command::Collapse { graph, dist, blocks } => {
            let g = parse_graph(&graph)?;
            let p = parse_dist(&dist, &g, ctx.seed)?;
            let blocks: Vec<Vec<usize>> = match blocks {
                Some(b) => serde_json::from_str(&b).map_err(|e| Failure::Usage(format!("blocks JSON: {e}")))?,
                None if g.vertex_count() % 2 == 0 => {
                    (0..g.vertex_count() / 2).map(|i| vec![2 * i, 2 * i + 1]).collect()
                }
                None => return Err(Failure::Usage("--blocks is required for this graph".into())),
            };
            let c = collapse(&g, &blocks)?;
            let q = c.distribution(&p)?;
            let edges: Vec<[usize; 2]> = c.graph.edges().iter().map(|&(u, v)| [u, v]).collect();
            let text = format!("graph {}\nedges {edges:?}\ndistribution {:?}\n", c.graph.descriptor(), q.counts());
            ctx.emit(
                json!({"graph": {"vertices": c.graph.vertex_count(), "edges": edges}, "block_of": c.block_of, "distribution": q}),
                text,
            );
        }
        Command::Smooth { graph, dist, vertex } => {
            let g = parse_graph(&graph)?;
            let p = parse_dist(&dist, &g, ctx.seed)?;
            let q = match vertex {
                Some(v) => smoothing_move(&g, &p, v)?,
                None => smooth_fully(&g, &p)?,
            };
            ctx.emit(json!({"graph": g.descriptor(), "distribution": q}), format!("{:?}\n", q.counts()));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(2)
        }
    }
}

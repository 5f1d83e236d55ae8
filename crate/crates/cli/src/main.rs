mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gallai_core::constructions::{self, Verification, Witness};
use gallai_core::format;
use gallai_core::formulas::{self, FormulaResult};
use gallai_core::gallai;
use gallai_core::search::{self, Budget, Checkpoint, Mode, Pruning, SearchConfig, SearchError, SearchProblem, Verdict};
use gallai_core::{ColoredComplete, StarUnionPattern, Threads};
use serde_json::json;

use report::{Report, Status};

#[derive(Parser)]
#[command(
    name = "gallai",
    version,
    about = "Gallai-Ramsey numbers of star unions: witnesses, verifiers and exhaustive search"
)]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and self-verify a lower-bound witness coloring.
    Construct(ConstructArgs),
    /// Check a coloring for rainbow triangles and a monochromatic K(1,n) ∪ K(1,m).
    Verify {
        path: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Extract a Gallai partition and its reduced graph.
    Partition { path: PathBuf },
    /// Evaluate a closed form.
    Formula(FormulaArgs),
    /// Exhaustive search for avoiding colorings.
    Search {
        #[command(subcommand)]
        action: SearchAction,
    },
    /// Check the star-stability implication on a coloring.
    Stability {
        path: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Write a seeded random Gallai coloring.
    Generate {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    SmallM,
    Equal,
    General,
    Pentagon,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    n: usize,
    /// Smaller star; defaults to `n` for `equal`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Five pentagon part sizes, e.g. `3,3,3,3,4`.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Cycle position of each listed part for `general`, e.g. `0,1,2,3,4`.
    #[arg(long, value_delimiter = ',')]
    arrangement: Option<Vec<usize>>,
    /// Write the coloring here; without it the coloring goes to stdout and the report to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaName {
    Ramsey,
    GrStar,
    GrSmallM,
    GrEqual,
    GrGeneral,
}

#[derive(Args)]
struct FormulaArgs {
    name: FormulaName,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Gallai,
    Ramsey,
}

#[derive(Args)]
struct SearchCommon {
    #[arg(long)]
    k: usize,
    /// Star sizes `n,m`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pattern: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Gallai)]
    mode: ModeArg,
    /// Node budget.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Wall-clock limit in seconds; makes inconclusive runs timing dependent.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, env = "GALLAI_THREADS")]
    threads: Option<usize>,
    /// Enumerate every coloring and check only complete ones.
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value_t = 10)]
    shard_depth: usize,
}

#[derive(Subcommand)]
enum SearchAction {
    /// Is there an avoiding coloring of K_N?
    Decide {
        #[command(flatten)]
        common: SearchCommon,
        #[arg(long)]
        order: usize,
        /// Save progress here when the search stops early or finishes.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a saved checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Stop after this many shards and save the checkpoint.
        #[arg(long)]
        stop_after_shards: Option<usize>,
        /// Write an avoiding coloring here when one is found.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Smallest N ≤ max with no avoiding coloring.
    Threshold {
        #[command(flatten)]
        common: SearchCommon,
        #[arg(long)]
        max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok((report, status, to_stderr)) => {
            let text = if json { report.to_json() } else { report.to_table() };
            if to_stderr {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::InputError as u8)
        }
    }
}

type Outcome = (Report, Status, bool);

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify { path, n, m } => cmd_verify(&path, n, m).map(stdout),
        Command::Partition { path } => cmd_partition(&path).map(stdout),
        Command::Formula(args) => cmd_formula(args).map(stdout),
        Command::Search { action } => cmd_search(action).map(stdout),
        Command::Stability { path, n, r } => cmd_stability(&path, n, r).map(stdout),
        Command::Generate {
            order,
            k,
            depth,
            seed,
            out,
        } => cmd_generate(order, k, depth, seed, out),
    }
}

fn stdout((r, s): (Report, Status)) -> Outcome {
    (r, s, false)
}

fn read_coloring(path: &Path) -> Result<ColoredComplete> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pattern(n: usize, m: usize) -> Result<StarUnionPattern> {
    StarUnionPattern::new(n, m).map_err(|e| anyhow!(e))
}

fn five(v: &[usize], what: &str) -> Result<[usize; 5]> {
    v.try_into().map_err(|_| anyhow!("{what} needs exactly 5 values, got {}", v.len()))
}

/// Writes the coloring to `out`, or returns it for stdout.
fn deliver(g: &ColoredComplete, out: Option<&Path>) -> Result<Option<String>> {
    let text = format::emit(g);
    match out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<Outcome> {
    let n = args.n;
    let k = args.k;
    let need_m = || args.m.ok_or_else(|| anyhow!("--m is required"));
    let w: Witness = match args.kind {
        ConstructKind::SmallM => constructions::build_small_m_lower(n, need_m()?, k)?,
        ConstructKind::Equal => {
            if let Some(m) = args.m.filter(|&m| m != n) {
                bail!("equal construction needs m = n, got m = {m}");
            }
            constructions::build_equal_lower(n, k)?
        }
        ConstructKind::General => match &args.arrangement {
            Some(a) => constructions::build_general_lower_arranged(n, need_m()?, k, five(a, "--arrangement")?)?,
            None => constructions::build_general_lower(n, need_m()?, k)?,
        },
        ConstructKind::Pentagon => {
            let sizes = args.sizes.as_deref().ok_or_else(|| anyhow!("--sizes is required"))?;
            constructions::build_pentagon(five(sizes, "--sizes")?, n, need_m()?, k)?
        }
    };
    let mut r = Report::new("construct");
    r.set_ser("provenance", &w.provenance)
        .set("pattern", json!([w.pattern.n(), w.pattern.m()]))
        .set("order", w.coloring.order())
        .set("colors", w.coloring.num_colors())
        .set("claimed_bound", w.claimed_bound)
        .set("verified", w.passed());
    if let Verification::Fail(f) = &w.verified {
        r.set_ser("failure", f);
    }
    let status = if w.passed() { Status::Ok } else { Status::Refuted };
    match deliver(&w.coloring, args.out.as_deref())? {
        Some(text) => {
            print!("{text}");
            Ok((r, status, true))
        }
        None => {
            r.set("out", args.out.as_ref().map(|p| p.display().to_string()));
            Ok((r, status, false))
        }
    }
}

fn cmd_verify(path: &Path, n: usize, m: usize) -> Result<(Report, Status)> {
    let pat = pattern(n, m)?;
    let g = read_coloring(path)?;
    let rainbow = g.find_rainbow_triangle();
    let star = g.find_mono_star_union(pat);
    let holds = rainbow.is_none() && star.is_none();
    let mut r = Report::new("verify");
    r.set("order", g.order())
        .set("colors", g.num_colors())
        .set("pattern", json!([pat.n(), pat.m()]))
        .set("holds", holds)
        .set_ser("rainbow_triangle", &rainbow)
        .set_ser("star_union", &star);
    Ok((r, if holds { Status::Ok } else { Status::Refuted }))
}

fn cmd_partition(path: &Path) -> Result<(Report, Status)> {
    let g = read_coloring(path)?;
    let mut r = Report::new("partition");
    r.set("order", g.order());
    match gallai::find_gallai_partition(&g)? {
        Some(p) => {
            let valid = gallai::verify_partition(&g, &p)?;
            let reduced = gallai::reduced_graph(&g, &p)?;
            r.set("found", true)
                .set("valid", valid)
                .set("num_parts", p.num_parts())
                .set_ser("part_sizes", &p.part_sizes())
                .set_ser("palette", &p.palette())
                .set_ser("reduced_colors", &reduced.colors_used())
                .set_ser("parts", &p.parts());
            Ok((r, if valid { Status::Ok } else { Status::Refuted }))
        }
        None => {
            r.set("found", false).set_ser("rainbow_triangle", &g.find_rainbow_triangle());
            Ok((r, Status::Refuted))
        }
    }
}

fn cmd_formula(args: FormulaArgs) -> Result<(Report, Status)> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| anyhow!("--{flag} is required"));
    let (label, res): (&str, FormulaResult) = match args.name {
        FormulaName::Ramsey => ("ramsey", formulas::ramsey_union_stars(need(args.n, "n")?, need(args.m, "m")?)?),
        FormulaName::GrStar => ("gr-star", formulas::gr_single_star(need(args.k, "k")?, need(args.m, "m")?)),
        FormulaName::GrSmallM => (
            "gr-small-m",
            formulas::gr_small_m(need(args.k, "k")?, need(args.n, "n")?, need(args.m, "m")?),
        ),
        FormulaName::GrEqual => ("gr-equal", formulas::gr_equal(need(args.k, "k")?, need(args.n, "n")?)),
        FormulaName::GrGeneral => (
            "gr-general",
            formulas::gr_general_bounds(need(args.k, "k")?, need(args.n, "n")?, need(args.m, "m")?),
        ),
    };
    let mut r = Report::new("formula");
    r.set("name", label)
        .set("n", args.n)
        .set("m", args.m)
        .set("k", args.k)
        .set_ser("kind", &res.kind)
        .set("value", res.value())
        .set("lower", res.lower)
        .set("upper", res.upper)
        .set("guards_satisfied", res.guards_satisfied())
        .set_ser("guard_violations", &res.guard_violations)
        .set_ser("notices", &res.notices);
    Ok((r, Status::Ok))
}

struct Prepared {
    k: usize,
    pattern: StarUnionPattern,
    mode: Mode,
    budget: Budget,
    config: SearchConfig,
}

fn prepare(c: &SearchCommon) -> Result<Prepared> {
    let [n, m] = c.pattern[..] else {
        bail!("--pattern needs two values n,m, got {:?}", c.pattern);
    };
    let time = match c.time_limit {
        Some(s) if !(s.is_finite() && s > 0.0) => bail!("--time-limit must be positive"),
        other => other.map(Duration::from_secs_f64),
    };
    let threads = match c.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(t) => Threads(t),
        None => Threads::available(),
    };
    Ok(Prepared {
        k: c.k,
        pattern: pattern(n, m)?,
        mode: match c.mode {
            ModeArg::Gallai => Mode::Gallai,
            ModeArg::Ramsey => Mode::Ramsey,
        },
        budget: Budget {
            max_nodes: c.budget,
            max_time: time,
        },
        config: SearchConfig {
            threads,
            pruning: if c.no_prune { Pruning::Off } else { Pruning::Full },
            shard_depth: c.shard_depth,
        },
    })
}

fn problem_fields(r: &mut Report, p: &SearchProblem) {
    r.set("k", p.k)
        .set("pattern", json!([p.pattern.n(), p.pattern.m()]))
        .set_ser("mode", &p.mode);
}

fn inconclusive(mut r: Report, nodes: u64) -> (Report, Status) {
    r.set("verdict", "inconclusive").set("nodes_explored", nodes);
    (r, Status::Inconclusive)
}

fn cmd_search(action: SearchAction) -> Result<(Report, Status)> {
    match action {
        SearchAction::Decide {
            common,
            order,
            checkpoint,
            resume,
            stop_after_shards,
            witness_out,
        } => {
            let p = prepare(&common)?;
            let problem = SearchProblem::new(p.k, p.pattern, p.mode, order)?;
            let mut r = Report::new("search decide");
            problem_fields(&mut r, &problem);
            r.set("order", order);
            let t0 = std::time::Instant::now();
            let started = match &resume {
                Some(path) => Checkpoint::read_from(path).map_err(anyhow::Error::from),
                None => match search::start(&problem, &p.config, &p.budget) {
                    Err(SearchError::Inconclusive { nodes_explored }) => return Ok(inconclusive(r, nodes_explored)),
                    other => other.map_err(anyhow::Error::from),
                },
            }?;
            let ckpt = match search::advance(started, &problem, p.config.threads, &p.budget, stop_after_shards) {
                Err(SearchError::Inconclusive { nodes_explored }) => return Ok(inconclusive(r, nodes_explored)),
                other => other?,
            };
            r.timing_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
            if let Some(path) = &checkpoint {
                ckpt.write_to(path)?;
                r.set("checkpoint", path.display().to_string());
            }
            if !ckpt.is_done() {
                r.set("remaining_shards", ckpt.remaining_shards());
                return Ok(inconclusive(r, ckpt.nodes_explored));
            }
            let out = search::outcome_of(&ckpt, t0.elapsed())?;
            r.set_ser("verdict", &out.verdict).set("nodes_explored", out.nodes_explored);
            if let Some(w) = &out.witness {
                r.set_ser("witness_rows", &w.rows());
                if let Some(path) = &witness_out {
                    deliver(w, Some(path))?;
                }
            }
            Ok((r, Status::Ok))
        }
        SearchAction::Threshold { common, max } => {
            let p = prepare(&common)?;
            if max < 2 {
                bail!("--max must be at least 2");
            }
            let mut r = Report::new("search threshold");
            problem_fields(&mut r, &SearchProblem::new(p.k, p.pattern, p.mode, 1)?);
            r.set("max", max);
            let t0 = std::time::Instant::now();
            let mut total = 0u64;
            let mut steps = Vec::new();
            let mut threshold = None;
            for order in 1..=max {
                let problem = SearchProblem::new(p.k, p.pattern, p.mode, order)?;
                let out = match search::decide(&problem, &p.budget, &p.config) {
                    Err(SearchError::Inconclusive { nodes_explored }) => {
                        r.set_ser("orders", &steps).set("inconclusive_at", order);
                        return Ok(inconclusive(r, total + nodes_explored));
                    }
                    other => other?,
                };
                total += out.nodes_explored;
                steps.push(json!({"order": order, "verdict": out.verdict, "nodes": out.nodes_explored}));
                if out.verdict == Verdict::Exhausted {
                    threshold = Some(order);
                    break;
                }
            }
            r.timing_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
            r.set("threshold", threshold).set("nodes_explored", total).set_ser("orders", &steps);
            Ok((r, Status::Ok))
        }
    }
}

fn cmd_stability(path: &Path, n: usize, r: usize) -> Result<(Report, Status)> {
    let g = read_coloring(path)?;
    let s = gallai::check_star_stability(&g, n, r)?;
    let mut rep = Report::new("stability");
    rep.set_ser("report", &s);
    let status = if s.counterexample { Status::Refuted } else { Status::Ok };
    Ok((rep, status))
}

fn cmd_generate(order: usize, k: usize, depth: usize, seed: u64, out: Option<PathBuf>) -> Result<Outcome> {
    let g = gallai::random_gallai(seed, order, k, depth)?;
    let mut r = Report::new("generate");
    r.set("order", order).set("colors", k).set("depth", depth).set("seed", seed);
    match deliver(&g, out.as_deref())? {
        Some(text) => {
            print!("{text}");
            Ok((r, Status::Ok, true))
        }
        None => {
            r.set("out", out.map(|p| p.display().to_string()));
            Ok((r, Status::Ok, false))
        }
    }
}

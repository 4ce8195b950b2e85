use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::warn;

use hline_core::canon::canonical_code;
use hline_core::classify::{classify, OutcomeTag};
use hline_core::families::{FamilyError, FamilySpec};
use hline_core::hline::hl_step;
use hline_core::io::{encode_graph6, parse_graph, report_for, CacheRecord, DiskCache};
use hline_core::lab::{find_minimal_members, run_conjecture, ConjectureId, Lab, LambdaStatus};
use hline_core::verify::{run_all, VerifyConfig};
use hline_core::{Budget, Graph};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "hline", version, about = "Iterated P_n-line graphs: classify, certify, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Do not read or write the classification cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Exit with status 3 when any outcome is Unknown.
    #[arg(long, global = true)]
    strict: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of operator applications.
    #[arg(long, global = true, default_value_t = Budget::default().max_iter)]
    max_iter: usize,
    /// Largest iterate order before giving up.
    #[arg(long, global = true, default_value_t = Budget::default().max_order)]
    max_order: usize,
    /// Node allowance for each exhaustive search.
    #[arg(long, global = true, default_value_t = Budget::default().search_nodes)]
    search_nodes: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_iter: self.max_iter,
            max_order: self.max_order,
            search_nodes: self.search_nodes,
        }
    }
}

fn path_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if n < 4 {
        return Err(format!("n must be at least 4, got {n}"));
    }
    Ok(n)
}

fn n_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a range like 4..8, got {s:?}"))?;
    let lo = path_order(lo.trim())?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if hi < lo {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Subcommand)]
enum Command {
    /// Print HL^1..HL^k with a provenance table for each step.
    Hl {
        /// Family spec (C6, P4, G(r=1,m=3), F7, CL(3,3,2)), edge list, or graph6.
        graph: String,
        #[arg(long, value_parser = path_order)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Classify the sequence of a graph and print the report as JSON.
    Classify {
        graph: String,
        #[arg(long, value_parser = path_order)]
        n: usize,
    },
    /// Print a family member as an edge list and as graph6.
    Family { spec: String },
    /// Decide minimal convergence for every small graph.
    SearchMin {
        #[arg(long, value_parser = path_order)]
        n: usize,
        #[arg(long)]
        vmax: usize,
        /// Also examine disjoint unions of two enumerated graphs.
        #[arg(long)]
        unions: bool,
    },
    /// Sweep small graphs for counterexamples to a conjecture.
    Conjecture {
        /// Div-iff-Key1, NonIsoPair, UnicyclicMin, or Bridge.
        id: ConjectureId,
        #[arg(long, value_parser = path_order)]
        n: usize,
        #[arg(long)]
        vmax: usize,
    },
    /// Run the reproduction suite and print a pass/fail table.
    VerifyPaper {
        #[arg(long, value_parser = n_range, default_value = "4..8")]
        n_range: RangeInclusive<usize>,
    },
    /// Inspect or empty the classification cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    Stats,
    Clear,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_graph(text: &str) -> Result<Graph, Failure> {
    match text.parse::<FamilySpec>() {
        Ok(spec) => spec.build().map_err(|e| fail(EXIT_PARSE, e.to_string())),
        Err(FamilyError::Syntax(_)) => {
            parse_graph(text).map_err(|e| fail(EXIT_PARSE, format!("cannot parse graph {text:?}: {e}")))
        }
        Err(e) => Err(fail(EXIT_PARSE, e.to_string())),
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    println!("{text}");
}

fn open_cache(disabled: bool) -> Option<DiskCache> {
    if disabled {
        return None;
    }
    let dir = DiskCache::default_dir()?;
    match DiskCache::open(&dir) {
        Ok(c) => Some(c),
        Err(e) => {
            warn!("cache disabled: cannot open {}: {e}", dir.display());
            None
        }
    }
}

/// A lab seeded from the cache, and the cache to write new results to.
fn lab_with_cache(budget: Budget, cache: &Option<DiskCache>) -> Lab {
    let lab = Lab::new(budget);
    if let Some(c) = cache {
        match c.load(&budget) {
            Ok(entries) => lab.seed(entries),
            Err(e) => warn!("cannot read cache: {e}"),
        }
    }
    lab
}

fn persist(lab: &Lab, cache: &Option<DiskCache>) {
    let Some(c) = cache else { return };
    let records: Vec<CacheRecord> = lab
        .take_fresh()
        .into_iter()
        .map(|(code, n, summary)| CacheRecord::new(code, n, lab.budget, summary))
        .collect();
    if let Err(e) = c.put_all(&records) {
        warn!("cannot write cache: {e}");
    }
}

fn strict_exit(strict: bool, unknown: bool) -> Result<(), Failure> {
    if strict && unknown {
        Err(fail(EXIT_UNKNOWN, "Unknown outcomes present (--strict)"))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = cli.budget.budget();
    match cli.command {
        Command::Hl { graph, n, steps } => {
            let mut g = read_graph(&graph)?;
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "HL^0: order {}, size {}\n  {g}", g.order(), g.size());
            for k in 1..=steps {
                let h = hl_step(&g, n);
                let _ = writeln!(out, "HL^{k}: order {}, size {}\n  {}", h.graph.order(), h.graph.size(), h.graph);
                let _ = writeln!(out, "  vertex  edge of HL^{}", k - 1);
                for (v, e) in h.provenance.iter().enumerate() {
                    let _ = writeln!(out, "  {v:>6}  {e}");
                }
                g = h.graph;
                if g.is_empty() {
                    break;
                }
            }
            Ok(())
        }
        Command::Classify { graph, n } => {
            let g = read_graph(&graph)?;
            let c = classify(&g, n, budget);
            if let (Some(cache), Ok(code)) = (open_cache(cli.no_cache), canonical_code(&g)) {
                let summary = c.summary();
                match cache.get(&code, n, &budget) {
                    Ok(Some(hit)) if hit != summary => warn!("cached summary {hit:?} disagrees with {summary:?}"),
                    Ok(Some(_)) => {}
                    _ => {
                        if let Err(e) = cache.put(&CacheRecord::new(code, n, budget, summary)) {
                            warn!("cannot write cache: {e}");
                        }
                    }
                }
            }
            print_json(&report_for(&g, &c));
            strict_exit(cli.strict, c.outcome.tag() == OutcomeTag::Unknown)
        }
        Command::Family { spec } => {
            let parsed: FamilySpec = spec.parse().map_err(|e: FamilyError| fail(EXIT_PARSE, e.to_string()))?;
            let g = parsed.build().map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            println!("{parsed}");
            println!("edge-list: {g}");
            println!("graph6:    {}", encode_graph6(&g));
            Ok(())
        }
        Command::SearchMin { n, vmax, unions } => {
            let cache = open_cache(cli.no_cache);
            let lab = lab_with_cache(budget, &cache);
            let report = find_minimal_members(n, vmax, &lab, unions).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            persist(&lab, &cache);
            print_json(&report);
            strict_exit(cli.strict, report.records.iter().any(|r| r.lambda == LambdaStatus::Unknown))
        }
        Command::Conjecture { id, n, vmax } => {
            let cache = open_cache(cli.no_cache);
            let lab = lab_with_cache(budget, &cache);
            let report = run_conjecture(id, n, vmax, &lab).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            persist(&lab, &cache);
            print_json(&report);
            strict_exit(cli.strict, report.unknown_classifications > 0)
        }
        Command::VerifyPaper { n_range } => {
            let cfg = VerifyConfig { n_range, budget };
            let lab = Lab::new(budget);
            let results = run_all(&cfg, &lab);
            for r in &results {
                println!("{r}");
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} criteria passed", results.len());
            if passed == results.len() {
                Ok(())
            } else {
                Err(fail(EXIT_VERIFY_FAILED, "some criteria failed"))
            }
        }
        Command::Cache { action } => {
            let dir = DiskCache::default_dir().ok_or_else(|| fail(EXIT_USAGE, "no cache directory (set HLINE_CACHE_DIR)"))?;
            let cache = DiskCache::open(&dir).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", dir.display())))?;
            let io_err = |e: std::io::Error| fail(EXIT_USAGE, e.to_string());
            match action {
                CacheAction::Stats => {
                    let stats = cache.stats(&budget).map_err(io_err)?;
                    println!("directory: {}", dir.display());
                    print_json(&stats);
                }
                CacheAction::Clear => {
                    let removed = cache.clear().map_err(io_err)?;
                    println!("removed {removed} segment(s) from {}", dir.display());
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use satforge::construction::{build_construction, lower_bound_edges, upper_bound_edges};
use satforge::discharging::{audit, DischargeError, Stage};
use satforge::graph6::parse_lines;
use satforge::search::{min_saturated_edges, read_summary, result_file_name, write_result, SearchBudget, SearchStatus};
use satforge::{check_saturated, to_graph6, Graph, GraphError, Verdict};

const CORPUS_ENV: &str = "SATFORGE_CORPUS";

const EXIT_VERDICT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "satforge", version, about = "Cycle-saturated graphs: construction, certificates, search and charge audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sparse C6-saturated graph on n vertices.
    Construct {
        #[command(flatten)]
        orders: Orders,
        /// Directory for `construction_{n}.g6`; graph6 goes to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every graph6 line of a file for C_k-saturation.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = cycle_length)]
        k: usize,
    },
    /// Find the minimum edge count of a C_k-saturated graph by exhaustive search.
    Search {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value_t = 6, value_parser = cycle_length)]
        k: usize,
        /// Result directory; defaults to $SATFORGE_CORPUS, then `corpus`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Run the charge audit on C6-saturated graphs.
    Audit {
        /// graph6 files; defaults to every `sat_*_6.g6` in $SATFORGE_CORPUS.
        files: Vec<PathBuf>,
        /// Comma-separated stages to dump as a per-vertex table, e.g. g,g5,f7.
        #[arg(long, value_delimiter = ',', value_parser = stage)]
        dump_stages: Vec<Stage>,
        /// Stop at the first graph with a vertex beyond the last level.
        #[arg(long)]
        strict_levels: bool,
    },
    /// Print lower bound, upper bound and construction size per order.
    Table {
        #[command(flatten)]
        orders: Orders,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Orders {
    #[arg(long)]
    n: Option<usize>,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = order_range)]
    n_range: Option<RangeInclusive<usize>>,
}

impl Orders {
    fn range(&self) -> RangeInclusive<usize> {
        match (&self.n, &self.n_range) {
            (Some(n), _) => *n..=*n,
            (None, Some(r)) => r.clone(),
            (None, None) => unreachable!("clap requires one of --n and --n-range"),
        }
    }
}

fn cycle_length(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|e| format!("{e}"))?;
    if k < 3 {
        return Err(format!("cycle length must be at least 3, got {k}"));
    }
    Ok(k)
}

fn order_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn stage(s: &str) -> Result<Stage, String> {
    Stage::parse(&s.to_ascii_lowercase()).ok_or_else(|| format!("unknown stage {s:?}"))
}

fn corpus_dir() -> Option<PathBuf> {
    std::env::var_os(CORPUS_ENV).map(PathBuf::from)
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = parse_lines(&text).with_context(|| format!("parsing {}", path.display()))?;
    if graphs.is_empty() {
        bail!("{} contains no graphs", path.display());
    }
    Ok(graphs)
}

fn construct(orders: &Orders, out: Option<&Path>) -> Result<u8> {
    let range = orders.range();
    let many = range.start() != range.end();
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut status = 0;
    for n in range {
        let (g, _) = build_construction(n)?;
        let bound = upper_bound_edges(n)?;
        let line = to_graph6(&g);
        match out {
            Some(dir) => {
                let path = dir.join(format!("construction_{n}.g6"));
                fs::write(&path, format!("{line}\n")).with_context(|| format!("writing {}", path.display()))?;
            }
            None => println!("{line}"),
        }
        let ok = g.edge_count() == bound && check_saturated(&g, 6).is_saturated();
        let prefix = if many { format!("n={n} ") } else { String::new() };
        println!(
            "{prefix}edges={} bound={bound} {}",
            g.edge_count(),
            if ok { "OK" } else { "FAIL" }
        );
        if !ok {
            status = EXIT_VERDICT;
        }
    }
    Ok(status)
}

fn check(file: &Path, k: usize) -> Result<u8> {
    let graphs = read_graphs(file)?;
    let mut status = 0;
    for (i, g) in graphs.iter().enumerate() {
        let report = check_saturated(g, k);
        let head = format!("{}: {} n={} e={}", i + 1, to_graph6(g), g.order(), g.edge_count());
        match &report.verdict {
            Verdict::Saturated => println!("{head} saturated"),
            Verdict::NotFree => {
                let cycle = report.free_violation.as_ref().map(ToString::to_string).unwrap_or_default();
                println!("{head} not-free: contains C{k}: {cycle}");
            }
            Verdict::MissingWitness(u, v) => {
                println!("{head} not-saturated: adding {u}-{v} creates no C{k}");
            }
        }
        if !report.is_saturated() {
            status = EXIT_VERDICT;
        }
    }
    Ok(status)
}

fn search(orders: &Orders, k: usize, out: Option<&Path>, budget: SearchBudget) -> Result<u8> {
    let dir = out
        .map(Path::to_path_buf)
        .or_else(corpus_dir)
        .unwrap_or_else(|| PathBuf::from("corpus"));
    let mut status = 0;
    for n in orders.range() {
        let r = min_saturated_edges(n, k, budget)?;
        write_result(&dir, &r).with_context(|| format!("writing results to {}", dir.display()))?;
        let sat = r.sat_value.map_or("-".to_string(), |s| s.to_string());
        println!(
            "n={n} k={k} sat={sat} extremal={} nodes={} status={}",
            r.extremal.len(),
            r.explored,
            r.status
        );
        if r.status == SearchStatus::BudgetExhausted {
            status = EXIT_BUDGET;
            break;
        }
    }
    Ok(status)
}

fn corpus_files() -> Result<Vec<PathBuf>> {
    let Some(dir) = corpus_dir() else {
        bail!("no input files and {CORPUS_ENV} is not set");
    };
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|s| s.to_str())
                .is_some_and(|s| s.starts_with("sat_") && s.ends_with("_6.g6"))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn audit_files(files: &[PathBuf], dump: &[Stage], strict_levels: bool) -> Result<u8> {
    let files = if files.is_empty() { corpus_files()? } else { files.to_vec() };
    let mut status = 0;
    for file in &files {
        for (i, g) in read_graphs(file)?.iter().enumerate() {
            println!("== {}:{} {}", file.display(), i + 1, to_graph6(g));
            match audit(g) {
                Ok(a) => {
                    print!("{}", a.render());
                    if !dump.is_empty() {
                        if let Some(l) = &a.ledger {
                            print!("{}", l.dump(dump));
                        }
                    }
                    if !a.passed() {
                        status = EXIT_VERDICT;
                    }
                }
                Err(e) => {
                    println!("precondition failed: {e}");
                    println!("result: FAIL");
                    status = EXIT_VERDICT;
                    if strict_levels && matches!(e, DischargeError::Level(GraphError::LevelOverflow { .. })) {
                        return Ok(status);
                    }
                }
            }
        }
    }
    Ok(status)
}

fn table(orders: &Orders) -> Result<u8> {
    let exact: Vec<(usize, usize)> = match corpus_dir() {
        Some(dir) => read_summary(&dir)?
            .into_iter()
            .filter(|r| r.k == 6 && r.status == SearchStatus::Complete.to_string())
            .filter(|r| dir.join(result_file_name(r.n, r.k)).exists())
            .filter_map(|r| r.sat.map(|s| (r.n, s)))
            .collect(),
        None => Vec::new(),
    };
    println!("n\tlower\tupper\tconstruction\texact");
    for n in orders.range() {
        let (upper, built) = match build_construction(n) {
            Ok((g, _)) => (upper_bound_edges(n)?.to_string(), g.edge_count().to_string()),
            Err(_) => ("-".to_string(), "-".to_string()),
        };
        let known = exact
            .iter()
            .find(|&&(m, _)| m == n)
            .map_or("-".to_string(), |&(_, s)| s.to_string());
        println!("{n}\t{}\t{upper}\t{built}\t{known}", lower_bound_edges(n));
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct { orders, out } => construct(&orders, out.as_deref()),
        Command::Check { file, k } => check(&file, k),
        Command::Search {
            orders,
            k,
            out,
            budget_nodes,
            budget_secs,
        } => {
            let budget = SearchBudget {
                max_nodes: budget_nodes,
                max_time: budget_secs.map(Duration::from_secs),
            };
            search(&orders, k, out.as_deref(), budget)
        }
        Command::Audit {
            files,
            dump_stages,
            strict_levels,
        } => audit_files(&files, &dump_stages, strict_levels),
        Command::Table { orders } => table(&orders),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

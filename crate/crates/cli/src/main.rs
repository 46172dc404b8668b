//! `d2c`: batch analysis, family constructors and the exhaustive census.
//!
//! Exit codes: 0 when everything checks out, 1 when a bound or certificate
//! check fails, 2 for usage and input errors. A failed check outranks bad
//! input lines, since it is the result that matters.

use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use d2c_core::analysis::analyze_lines;
use d2c_core::enumerate::{census, census_shard, merge, CensusOptions, ExecMode, SearchReport, ShardSpec};
use d2c_core::families::named;
use d2c_core::{to_graph6, VertexPair};

/// Largest order the search accepts.
const MAX_SEARCH_ORDER: usize = 11;

const THREADS_VAR: &str = "D2C_THREADS";

#[derive(Parser)]
#[command(name = "d2c", version, about = "Diameter-2-critical graph analysis and search")]
struct Cli {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze graph6 lines, writing one JSON record per graph.
    Check(CheckArgs),
    /// Print members of a named family as graph6.
    Family {
        /// kab, c5plus, t, tprime, conclusion or h5.
        name: String,
        params: Vec<usize>,
    },
    /// Exhaustive census of the D2C graphs of one order.
    Search(SearchArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Input file; stdin when absent or `-`.
    input: Option<PathBuf>,
    /// Build the certificate on this dominating edge, as `u,v`.
    #[arg(long, value_parser = parse_edge)]
    edge: Option<VertexPair>,
}

#[derive(Args)]
struct SearchArgs {
    n: usize,
    /// Also count every isomorphism class, not only D2C candidates.
    #[arg(long)]
    count_all: bool,
    /// Skip the per-edge certificate checks.
    #[arg(long)]
    no_certificates: bool,
    /// Split the search into this many shards.
    #[arg(long)]
    shards: Option<usize>,
    /// Run only this shard (needs --shards).
    #[arg(long)]
    shard: Option<usize>,
    /// Shards are cut at the graphs of order `1 + prefix-depth`.
    #[arg(long, default_value_t = 5)]
    prefix_depth: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the exceptional graphs (not expanded 5-cycles) as graph6 here.
    #[arg(long)]
    witnesses: Option<PathBuf>,
    /// Keep one report per finished shard in this directory.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Reuse shard reports already in the checkpoint directory.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
}

fn parse_edge(s: &str) -> Result<VertexPair, String> {
    let (a, b) = s.split_once(',').ok_or("expected `u,v`")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a == b {
        return Err("endpoints must differ".into());
    }
    Ok(VertexPair::new(a, b))
}

/// Failure kinds that map to distinct exit codes.
enum Outcome {
    Clean,
    Violations,
    BadInput,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(match o {
            Outcome::Clean => 0,
            Outcome::Violations => 1,
            Outcome::BadInput => 2,
        })
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
    if threads == 0 {
        bail!("{THREADS_VAR} must be positive");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Check(args) => check(&args, mode),
        Command::Family { name, params } => family(&name, &params),
        Command::Search(args) => search(&args, mode),
    });
    match result {
        Ok(outcome) => outcome.into(),
        Err(e) => {
            eprintln!("d2c: {e:#}");
            Outcome::BadInput.into()
        }
    }
}

fn check(args: &CheckArgs, mode: ExecMode) -> Result<Outcome> {
    let lines: Vec<String> = match args.input.as_deref() {
        None => read_lines(io::stdin().lock())?,
        Some(p) if p == Path::new("-") => read_lines(io::stdin().lock())?,
        Some(p) => {
            let f = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
            read_lines(io::BufReader::new(f))?
        }
    };
    let outcomes = analyze_lines(&lines, args.edge, mode);
    let mut out = BufWriter::new(io::stdout().lock());
    let (mut violations, mut errors) = (0, 0);
    for o in &outcomes {
        writeln!(out, "{}", o.to_json())?;
        violations += o.violations();
        errors += usize::from(o.is_error());
    }
    out.flush()?;
    if errors > 0 {
        eprintln!("d2c: {errors} input line(s) could not be analyzed");
    }
    Ok(if violations > 0 {
        Outcome::Violations
    } else if errors > 0 {
        Outcome::BadInput
    } else {
        Outcome::Clean
    })
}

fn read_lines(r: impl BufRead) -> Result<Vec<String>> {
    r.lines().collect::<io::Result<_>>().context("reading input")
}

fn family(name: &str, params: &[usize]) -> Result<Outcome> {
    let graphs = named(name, params)?;
    let mut out = BufWriter::new(io::stdout().lock());
    for g in &graphs {
        writeln!(out, "{}", to_graph6(g))?;
    }
    out.flush()?;
    Ok(Outcome::Clean)
}

fn search(args: &SearchArgs, exec: ExecMode) -> Result<Outcome> {
    if !(1..=MAX_SEARCH_ORDER).contains(&args.n) {
        bail!("search order must be in 1..={MAX_SEARCH_ORDER}, got {}", args.n);
    }
    let options = CensusOptions {
        count_all: args.count_all,
        certificates: !args.no_certificates,
        exec,
    };
    let report = match (args.shards, args.shard) {
        (None, Some(_)) => bail!("--shard needs --shards"),
        (Some(0), _) => bail!("--shards must be positive"),
        (Some(k), Some(i)) if i >= k => bail!("--shard {i} is out of range for --shards {k}"),
        (Some(k), Some(i)) => run_shard(&spec(args, k, i), &options, args)?,
        (Some(k), None) => {
            let reports = (0..k)
                .map(|i| run_shard(&spec(args, k, i), &options, args))
                .collect::<Result<Vec<_>>>()?;
            merge(reports)?
        }
        (None, None) if args.checkpoint.is_some() => {
            bail!("--checkpoint needs --shards")
        }
        (None, None) => census(args.n, &options),
    };
    let json = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(p) => fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{json}"),
    }
    if let Some(p) = &args.witnesses {
        let mut text = String::new();
        for w in &report.witnesses.exceptions_not_in_c5plus {
            text.push_str(w);
            text.push('\n');
        }
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if report.violations.total() > 0 {
        Outcome::Violations
    } else {
        Outcome::Clean
    })
}

fn spec(args: &SearchArgs, modulus: usize, index: usize) -> ShardSpec {
    ShardSpec {
        n: args.n,
        prefix_depth: args.prefix_depth,
        modulus,
        index,
    }
}

fn checkpoint_path(dir: &Path, s: &ShardSpec) -> PathBuf {
    dir.join(format!("n{}-d{}-shard{}of{}.json", s.n, s.prefix_depth, s.index, s.modulus))
}

/// Runs one shard, going through the checkpoint directory when there is one.
fn run_shard(s: &ShardSpec, options: &CensusOptions, args: &SearchArgs) -> Result<SearchReport> {
    let path = args.checkpoint.as_deref().map(|dir| checkpoint_path(dir, s));
    if let (Some(p), true) = (&path, args.resume) {
        if p.exists() {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let r: SearchReport =
                serde_json::from_str(&text).with_context(|| format!("parsing checkpoint {}", p.display()))?;
            if r.shard != Some(*s) || r.count_all != options.count_all || r.certificates != options.certificates {
                bail!("checkpoint {} belongs to a different search", p.display());
            }
            return Ok(r);
        }
    }
    let r = census_shard(s, options)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        // Write then rename, so an interrupted run never leaves a torn file.
        let tmp = p.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&r)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, p).with_context(|| format!("renaming {}", tmp.display()))?;
    }
    Ok(r)
}

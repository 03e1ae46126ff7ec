use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zerolocus::localization::GraphCache;
use zerolocus::orchestrator::{
    run_compute, run_selftest, ConfigFile, OutputFormat, RunConfig, SelftestOptions, CACHE_DIR_ENV,
};

/// Exact genus-0 Gromov-Witten invariants of zero loci in projective space.
#[derive(Parser)]
#[command(name = "zerolocus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants degree by degree.
    Compute(ComputeArgs),
    /// Run the cross-oracle checks.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Manage the graph cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        #[arg(long, global = true)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    Inspect,
    Clear,
    Verify,
}

#[derive(Args)]
struct ComputeArgs {
    /// Flat key/value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension of the ambient projective space.
    #[arg(short, long)]
    r: Option<usize>,
    /// Degree of a convex summand O(l); repeatable.
    #[arg(long = "convex")]
    convex: Vec<u32>,
    /// Degree m of a concave summand O(-m); repeatable.
    #[arg(long = "concave")]
    concave: Vec<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// localization, mirror or both.
    #[arg(long)]
    method: Option<String>,
    /// euler or chern:<s>.
    #[arg(long)]
    class: Option<String>,
    /// human or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

fn env_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

fn compute(args: ComputeArgs) -> Result<ExitCode, zerolocus::Error> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        r: args.r,
        convex: (!args.convex.is_empty()).then_some(args.convex),
        concave: (!args.concave.is_empty()).then_some(args.concave),
        max_degree: args.max_degree,
        method: args.method,
        class: args.class,
        format: args.format,
        cache_dir: args.cache_dir,
        seed: args.seed,
    };
    let cfg = RunConfig::resolve(file, flags, env_cache_dir())?;
    let report = run_compute(&cfg)?;
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    match cfg.format {
        OutputFormat::Json => print!("{}", report.to_json_lines()),
        OutputFormat::Human => print!("{}", report.to_human()),
    }
    eprint!("{}", report.timing_text());
    if report.agrees() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("pipelines disagree:");
        eprint!("{}", report.diff_text());
        Ok(ExitCode::from(1))
    }
}

fn cache(action: CacheAction, dir: Option<PathBuf>) -> Result<ExitCode, zerolocus::Error> {
    let dir = dir.or_else(env_cache_dir).ok_or_else(|| {
        zerolocus::Error::InvalidConfig(format!(
            "no cache directory: pass --cache-dir or set {CACHE_DIR_ENV}"
        ))
    })?;
    let cache = GraphCache::new(dir);
    match action {
        CacheAction::Inspect => {
            for e in cache.inspect()? {
                let key = e.key.map_or("?".into(), |k| {
                    format!("r={} d={} marks={}", k.r, k.degree, k.marks)
                });
                let graphs = e.graphs.map_or("?".into(), |n| n.to_string());
                println!("{}  {key}  graphs={graphs}  {}", e.path.display(), e.status);
            }
            Ok(ExitCode::SUCCESS)
        }
        CacheAction::Clear => {
            println!("removed {} files", cache.clear()?);
            Ok(ExitCode::SUCCESS)
        }
        CacheAction::Verify => {
            let problems = cache.verify()?;
            for (path, why) in &problems {
                println!("{}: {why}", path.display());
            }
            Ok(if problems.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Selftest { seed, cache_dir } => {
            let mut opts = SelftestOptions::default();
            if let Some(seed) = seed {
                opts.seed = seed;
            }
            opts.cache_dir = cache_dir.or_else(env_cache_dir);
            let report = run_selftest(&opts);
            print!("{}", report.render());
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Cache { action, cache_dir } => cache(action, cache_dir),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

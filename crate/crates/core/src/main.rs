use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skewcensus::aut::automorphisms;
use skewcensus::catalog::{family_condition, make_spec, types_at, GroupSpec, TypeLabel};
use skewcensus::census::{run_census, CensusReport};
use skewcensus::error::Error;
use skewcensus::formulas::table_aut_order;
use skewcensus::gamma::search::{enumerate_gfs, Budget, SearchMode, SearchOptions};
use skewcensus::gamma::Context;
use skewcensus::group::build_group;
use skewcensus::report;

#[derive(Parser)]
#[command(name = "skewcensus", version, about = "Census of gamma functions and skew braces of order p^2 q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the groups with elementary abelian Sylow p-subgroup at (p, q).
    Catalog(PrimePair),
    /// Compute Aut(G) and compare its order with the closed form.
    Aut(GroupArgs),
    /// Dump every gamma function on one group.
    Enumerate(RunArgs),
    /// Enumerate and summarize: counts by target, classes, Hopf-Galois counts.
    Census(RunArgs),
    /// Census plus a PASS/FAIL table against the closed forms.
    Verify(RunArgs),
}

#[derive(Args)]
struct PrimePair {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
struct GroupArgs {
    #[command(flatten)]
    primes: PrimePair,
    /// Family 5..11, or "all".
    #[arg(long = "type", default_value = "all")]
    family: String,
    /// Type-8 parameter; all classes when omitted.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Pruned,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "full")]
    mode: Mode,
    /// Worker threads for the search.
    #[arg(long, env = "SKEWCENSUS_WORKERS")]
    workers: Option<usize>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Write the machine-readable result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl RunArgs {
    fn options(&self) -> skewcensus::error::Result<SearchOptions> {
        if self.workers == Some(0) {
            return Err(Error::InvalidParameters("--workers must be at least 1".into()));
        }
        Ok(SearchOptions {
            mode: match self.mode {
                Mode::Full => SearchMode::Full,
                Mode::Pruned => SearchMode::PruneSymmetry,
            },
            budget: Budget { max_nodes: self.budget_nodes, max_seconds: self.budget_seconds },
            workers: self.workers,
        })
    }
}

/// The groups selected by `--type` and `--k`, validated against the
/// divisibility conditions.
fn selected(args: &GroupArgs) -> skewcensus::error::Result<Vec<GroupSpec>> {
    let (p, q) = (args.primes.p, args.primes.q);
    let labels: Vec<TypeLabel> = if args.family == "all" {
        if args.k.is_some() {
            return Err(Error::InvalidParameters("--k needs --type 8".into()));
        }
        types_at(p, q)
    } else {
        let family: u8 = args
            .family
            .parse()
            .map_err(|_| Error::InvalidParameters(format!("--type must be 5..11 or all, got {}", args.family)))?;
        family_condition(family, p, q)?;
        match (family, args.k) {
            (8, Some(k)) => vec![TypeLabel::eight(k, q)],
            (8, None) => types_at(p, q).into_iter().filter(|t| t.family == 8).collect(),
            (_, Some(_)) => return Err(Error::InvalidParameters("--k only applies to type 8".into())),
            (f, None) => vec![TypeLabel::new(f)],
        }
    };
    labels.iter().map(|t| make_spec(t.family, p, q, t.k)).collect()
}

fn emit(output: &Option<PathBuf>, text: &str) -> skewcensus::error::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParameters(format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn censuses(args: &RunArgs) -> skewcensus::error::Result<Vec<CensusReport>> {
    let opts = args.options()?;
    selected(&args.group)?.iter().map(|spec| run_census(spec, &opts)).collect()
}

fn render(args: &RunArgs, reports: &[CensusReport]) -> skewcensus::error::Result<String> {
    match args.format {
        Format::Json => Ok(report::census_json(reports)),
        Format::Csv => report::census_csv(reports),
    }
}

fn run(cli: Cli) -> skewcensus::error::Result<ExitCode> {
    match cli.command {
        Command::Catalog(pq) => {
            for t in types_at(pq.p, pq.q) {
                let spec = make_spec(t.family, pq.p, pq.q, t.k)?;
                let mut params = Vec::new();
                for (name, v) in [("k", spec.k), ("lambda", spec.lambda), ("u", spec.u), ("trace", spec.trace_t)] {
                    if let Some(v) = v {
                        params.push(format!("{}={}", name, v));
                    }
                }
                println!(
                    "{:<8} |Aut| = {:<10} {}",
                    t.to_string(),
                    table_aut_order(t.family, pq.p, pq.q)?,
                    params.join(" ")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut(args) => {
            let mut ok = true;
            for spec in selected(&args)? {
                let g = build_group(&spec)?;
                let aut = automorphisms(&g)?;
                let expected = table_aut_order(spec.family, spec.p, spec.q)?;
                let matches = aut.order() as u128 == expected;
                ok &= matches;
                println!(
                    "{:<8} order {} ({} generators), closed form {} {}",
                    spec.label().to_string(),
                    aut.order(),
                    aut.generators.len(),
                    expected,
                    if matches { "PASS" } else { "FAIL" }
                );
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Enumerate(args) => {
            let specs = selected(&args.group)?;
            let [spec] = specs.as_slice() else {
                return Err(Error::InvalidParameters("enumerate needs a single group (--type and, for 8, --k)".into()));
            };
            let opts = args.options()?;
            let g = build_group(spec)?;
            let aut = automorphisms(&g)?;
            let ctx = Context::new(&g, &aut);
            let outcome = enumerate_gfs(&ctx, &opts)?;
            let text = match args.format {
                Format::Json => report::enumeration_json(&ctx, &outcome, opts.mode.label())?,
                Format::Csv => report::enumeration_csv(&ctx, &outcome)?,
            };
            emit(&args.output, &text)?;
            eprintln!("{} gamma functions, status {:?}", outcome.gfs.len(), outcome.status);
            Ok(if outcome.status == skewcensus::gamma::search::SearchStatus::Complete {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Census(args) => {
            let reports = censuses(&args)?;
            emit(&args.output, &render(&args, &reports)?)?;
            let complete = reports.iter().all(|r| r.status == skewcensus::gamma::search::SearchStatus::Complete);
            Ok(if complete { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify(args) => {
            let reports = censuses(&args)?;
            print!("{}", report::verification_table(&reports));
            if args.output.is_some() {
                emit(&args.output, &render(&args, &reports)?)?;
            }
            let passed = reports.iter().all(CensusReport::passed);
            println!("{}", if passed { "verify: all cells PASS" } else { "verify: FAIL" });
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e @ (Error::InvalidParameters(_) | Error::UnsupportedShape(_))) => {
            eprintln!("usage error: {}", e);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

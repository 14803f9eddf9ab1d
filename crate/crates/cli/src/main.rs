use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use forq::bench::{self, BenchRecord, Status};
use forq::engine::{decide_inclusion, EngineOptions, Verdict};
use forq::io::{build_pair, parse_ba_with, ParseOptions};
use forq::testkit::{oracle_inclusion, suite_pair};
use forq::{Buchi, Error};

#[derive(Parser)]
#[command(name = "forq", version, about = "Büchi automata language inclusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether L(A) ⊆ L(B).
    Check(CheckArgs),
    /// Run every pair of a manifest or directory and report timings.
    Bench(BenchArgs),
    /// Compare the engine against the reference oracle on random pairs.
    #[command(hide = true)]
    Selftest {
        #[arg(long, default_value_t = 500)]
        pairs: u64,
    },
}

#[derive(Args)]
struct CheckArgs {
    a: PathBuf,
    b: PathBuf,
    /// Skip periods v with wv not below w.
    #[arg(long)]
    picky: bool,
    /// Keep every generated word instead of antichains.
    #[arg(long)]
    no_prune: bool,
    /// Keep accepting states of A that lie on no cycle.
    #[arg(long)]
    no_acc_reduce: bool,
    /// Query periods only once their basis is stable.
    #[arg(long)]
    no_eager: bool,
    /// Reject files that rely on the default initial or accepting states.
    #[arg(long)]
    strict: bool,
    /// Print statistics after the verdict.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_name = "N")]
    timeout_ms: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    /// A manifest of `name A.ba B.ba` lines, or a directory holding
    /// `manifest.txt` or `<name>.A.ba` / `<name>.B.ba` pairs.
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    survival: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_name = "N")]
    timeout_ms: Option<u64>,
    #[arg(long)]
    strict: bool,
}

fn load_pair(a: &Path, b: &Path, strict: bool) -> Result<(Buchi, Buchi)> {
    let opts = ParseOptions { strict };
    let read = |p: &Path| -> Result<_> {
        let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
        parse_ba_with(&text, opts).with_context(|| format!("cannot parse {}", p.display()))
    };
    let (pa, pb) = (read(a)?, read(b)?);
    Ok(build_pair(&pa, &pb)?)
}

fn check(args: &CheckArgs) -> Result<ExitCode> {
    let (a, b) = load_pair(&args.a, &args.b, args.strict)?;
    let opts = EngineOptions {
        prune: !args.no_prune,
        picky: args.picky,
        collect_stats: args.stats,
        eager_queries: !args.no_eager,
        reduce_accepting: !args.no_acc_reduce,
        deadline: args.timeout_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
    };
    let start = Instant::now();
    let result = match decide_inclusion(&a, &b, &opts) {
        Ok(r) => r,
        Err(Error::Timeout) => {
            eprintln!("timeout after {} ms", start.elapsed().as_millis());
            return Ok(ExitCode::from(3));
        }
        Err(e) => return Err(e.into()),
    };
    let alphabet = a.alphabet();
    match &result.witness {
        None => println!("INCLUDED"),
        Some(w) => {
            println!("NOT_INCLUDED");
            if w.stem.is_empty() {
                println!("counterexample: ({})^w", w.period.display(alphabet));
            } else {
                println!("counterexample: {} ({})^w", w.stem.display(alphabet), w.period.display(alphabet));
            }
        }
    }
    if args.stats {
        let s = &result.stats;
        println!("queries={}", s.membership_queries);
        println!("stem_basis={}", s.stem_basis_max);
        println!("period_basis={}", s.period_basis_max);
        println!("rounds={}", s.rounds);
        println!("time_ms={}", bench::millis(s.elapsed));
    }
    Ok(ExitCode::from(match result.verdict {
        Verdict::Included => 0,
        Verdict::NotIncluded => 1,
    }))
}

/// `(name, A, B)` triples with paths resolved.
fn bench_entries(input: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>> {
    let (manifest, base) = if input.is_dir() {
        let m = input.join("manifest.txt");
        if !m.exists() {
            let mut out = Vec::new();
            for entry in fs::read_dir(input).with_context(|| format!("cannot read {}", input.display()))? {
                let path = entry?.path();
                let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
                if let Some(stem) = name.strip_suffix(".A.ba") {
                    let other = input.join(format!("{stem}.B.ba"));
                    if other.exists() {
                        out.push((stem.to_string(), path.clone(), other));
                    }
                }
            }
            out.sort();
            return Ok(out);
        }
        (m, input.to_path_buf())
    } else {
        (input.to_path_buf(), input.parent().unwrap_or(Path::new(".")).to_path_buf())
    };
    let text = fs::read_to_string(&manifest).with_context(|| format!("cannot read {}", manifest.display()))?;
    let lines = bench::parse_manifest(&text).map_err(anyhow::Error::msg)?;
    Ok(lines
        .into_iter()
        .map(|(name, a, b)| (name, base.join(a), base.join(b)))
        .collect())
}

fn run_entry(name: &str, a: &Path, b: &Path, strict: bool, timeout: Option<Duration>) -> BenchRecord {
    let start = Instant::now();
    match load_pair(a, b, strict) {
        Ok((a, b)) => bench::run_pair(name, &a, &b, timeout),
        Err(e) => {
            eprintln!("{name}: {e:#}");
            BenchRecord::failed(name, Status::Error, start.elapsed())
        }
    }
}

fn bench_cmd(args: &BenchArgs) -> Result<ExitCode> {
    let entries = bench_entries(&args.input)?;
    let timeout = args.timeout_ms.map(Duration::from_millis);
    let next = AtomicUsize::new(0);
    let results = Mutex::new(vec![None; entries.len()]);
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, a, b)) = entries.get(i) else { break };
                let rec = run_entry(name, a, b, args.strict, timeout);
                results.lock().unwrap()[i] = Some(rec);
            });
        }
    });
    let records: Vec<BenchRecord> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every entry ran"))
        .collect();

    match &args.csv {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            bench::write_csv(file, &records)?;
        }
        None => bench::write_csv(std::io::stdout().lock(), &records)?,
    }
    if let Some(path) = &args.survival {
        let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        bench::write_survival(file, &bench::survival(&records))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(pairs: u64) -> Result<ExitCode> {
    let mut disagreements = 0;
    for i in 0..pairs {
        let (a, b) = suite_pair(i);
        let expected = oracle_inclusion(&a, &b)?;
        let got = decide_inclusion(&a, &b, &EngineOptions::default())?.verdict == Verdict::Included;
        if got != expected {
            disagreements += 1;
            println!("pair {i}: engine {got}, oracle {expected}");
        }
    }
    println!("{pairs} pairs, {disagreements} disagreements");
    if disagreements > 0 {
        bail!("engine and oracle disagree");
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) => check(args),
        Command::Bench(args) => bench_cmd(args),
        Command::Selftest { pairs } => selftest(*pairs),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

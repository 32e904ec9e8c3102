//! `qm`: verification driver for the moduli space `M(3m+2n+2)` on `P^1 x P^1`.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 bad input,
//! 3 a worker panicked (a partial report is still written).

mod report;

use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use quadric_moduli::goldens::Goldens;
use quadric_moduli::hilbert::ResolutionSpec;
use quadric_moduli::locus::{supported_field, LocusRun, SweepMode, SweepOptions, RAW_ORACLE_PRIMES};
use serde::Serialize;

use report::{betti_section, hilbert_section, locus_section, run_locus, HilbertResult, LocusSection, Report};

#[derive(Parser)]
#[command(
    name = "qm",
    version,
    about = "Exact checks for the moduli space M(3m+2n+2) on P1 x P1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poincare polynomial and Euler characteristic.
    Betti {
        #[arg(long)]
        json: bool,
        /// Golden values file (defaults to the built-in copy).
        #[arg(long, value_name = "PATH")]
        golden: Option<PathBuf>,
    },
    /// Hilbert polynomial of a resolution by line bundles.
    Hilbert {
        /// Inline JSON: {"positions":[[[a,b],...],...]}
        spec: Option<String>,
        #[arg(long, value_name = "PATH", conflicts_with = "spec")]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the determinant locus over one prime field.
    VerifyLocus {
        #[arg(long)]
        prime: u32,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every check for the given primes.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Full JSON report over all supported primes.
    Report {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Also sweep all of F_p^12 per plane (p in {2, 3}).
    #[arg(long)]
    full_oracle: bool,
    /// Enumerate every fiber point even where the rank count is used.
    #[arg(long)]
    full_sweep: bool,
    /// Worker threads for the sweeps.
    #[arg(long, env = "QM_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Fault injection for testing the exit-3 path.
    #[arg(long, hide = true, value_name = "PRIME")]
    inject_panic: Option<u32>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Also write the JSON report here.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Golden values file (defaults to the built-in copy).
    #[arg(long, value_name = "PATH")]
    golden: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> SweepOptions {
        let mut opts = SweepOptions::default();
        if let Some(w) = self.workers {
            opts.workers = w as usize;
        }
        if self.full_sweep {
            opts.mode = SweepMode::Exhaustive;
        }
        opts.full_oracle = self.full_oracle;
        opts
    }

    fn validate(&self, primes: &[u32]) -> anyhow::Result<()> {
        if primes.is_empty() {
            bail!("no primes given");
        }
        for &p in primes {
            supported_field(p)?;
            if self.full_oracle && !RAW_ORACLE_PRIMES.contains(&p) {
                bail!("--full-oracle sweeps F_{p}^12 per plane; only p in {RAW_ORACLE_PRIMES:?} is feasible");
            }
        }
        Ok(())
    }
}

enum Failure {
    Input(anyhow::Error),
    Worker,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("qm: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Worker) => ExitCode::from(3),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Betti { json, golden } => cmd_betti(json, golden.as_deref()),
        Command::Hilbert { spec, file, json } => cmd_hilbert(spec, file.as_deref(), json),
        Command::VerifyLocus { prime, run, json } => cmd_verify_locus(prime, &run, json),
        Command::Verify { primes, run, out, json } => cmd_verify(&primes, &run, &out, json),
        Command::Report { primes, run, out } => cmd_verify(&primes, &run, &out, true),
    }
}

fn load_goldens(path: Option<&Path>) -> anyhow::Result<Goldens> {
    match path {
        None => Ok(Goldens::embedded()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Goldens::parse(&text).with_context(|| format!("golden file {}", p.display()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn cmd_betti(json: bool, golden: Option<&Path>) -> Outcome {
    let goldens = load_goldens(golden)?;
    let b = betti_section(&goldens)?;
    if json {
        println!("{}", to_json(&b));
    } else {
        let coeffs: Vec<String> = b.coeffs.iter().map(i64::to_string).collect();
        println!("P(xi)  = {}", b.polynomial);
        println!("coeffs = [{}]", coeffs.join(", "));
        println!("degree = {}", b.degree);
        println!("euler  = {}", b.euler);
        println!("golden = {}", if b.ok { "match" } else { "MISMATCH" });
    }
    Ok(b.ok)
}

fn cmd_hilbert(spec: Option<String>, file: Option<&Path>, json: bool) -> Outcome {
    let text = match (spec, file) {
        (Some(s), _) => s,
        (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => {
            return Err(Failure::Input(anyhow::anyhow!(
                "give a resolution as JSON or with --file"
            )))
        }
    };
    let spec = ResolutionSpec::from_json(&text).context("resolution spec")?;
    let result = HilbertResult::of(&spec);
    if json {
        println!("{}", to_json(&result));
    } else {
        println!("{}", result.line());
    }
    Ok(true)
}

/// Runs a sweep, turning a panic anywhere inside it into `Err`.
fn guarded_sweep(p: u32, run: &RunArgs, opts: &SweepOptions) -> Result<anyhow::Result<LocusRun>, String> {
    let previous = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(AssertUnwindSafe(|| {
        if run.inject_panic == Some(p) {
            panic!("injected fault at p = {p}");
        }
        run_locus(p, opts)
    }));
    panic::set_hook(previous);
    result.map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into())
    })
}

fn cmd_verify_locus(p: u32, run: &RunArgs, json: bool) -> Outcome {
    run.validate(&[p])?;
    let locus = match guarded_sweep(p, run, &run.options()) {
        Ok(r) => r?,
        Err(msg) => {
            eprintln!("qm: worker panicked during the p = {p} sweep: {msg}");
            return Err(Failure::Worker);
        }
    };
    if json {
        println!("{}", to_json(&locus));
    } else {
        print_locus_table(&locus);
    }
    Ok(locus.summary.ok && locus.fibers.iter().all(|r| r.passed()))
}

fn print_locus_table(run: &LocusRun) {
    let s = &run.summary;
    let mut by_type: std::collections::BTreeMap<String, (u64, u64, u64)> = Default::default();
    for r in &run.fibers {
        let key = serde_json::to_value(&r.plane_type).expect("serializes");
        let name = match key["rank1_lines"].as_u64() {
            Some(n) => format!("generic ({n} rank-one lines)"),
            None => key["type"].as_str().unwrap_or("?").to_string(),
        };
        let e = by_type.entry(name).or_default();
        e.0 += 1;
        e.1 += r.detzero_count;
        e.2 += u64::from(!r.passed());
    }
    println!("p = {}  mode = {:?}  planes = {}", s.prime, s.mode, s.planes);
    println!(
        "{:<30} {:>7} {:>10} {:>9}",
        "plane type", "planes", "det-zero", "failures"
    );
    for (name, (planes, zeros, fails)) in &by_type {
        println!("{name:<30} {planes:>7} {zeros:>10} {fails:>9}");
    }
    println!("|X(F_p)|  = {} (expected {})", s.x_count, s.expected);
    println!("|M(F_p)|  = {} (P(p) = {})", s.moduli_count, s.poincare_eval);
    println!("ok        = {}", s.ok);
}

fn cmd_verify(primes: &[u32], run: &RunArgs, out: &OutputArgs, json: bool) -> Outcome {
    run.validate(primes)?;
    let goldens = load_goldens(out.golden.as_deref())?;
    let betti = betti_section(&goldens)?;
    let hilbert = hilbert_section(&goldens);
    let opts = run.options();
    let mut locus: Vec<LocusSection> = Vec::new();
    let mut failure = None;
    for &p in primes {
        match guarded_sweep(p, run, &opts) {
            Ok(r) => locus.push(locus_section(&r?, &goldens, run.full_oracle)),
            Err(msg) => {
                failure = Some(format!("worker panicked during the p = {p} sweep: {msg}"));
                break;
            }
        }
    }
    let report = Report::new(betti, hilbert, locus, failure);
    let text = to_json(&report);
    if let Some(path) = &out.output {
        let mut f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        writeln!(f, "{text}").with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        println!("{text}");
    } else {
        print_report(&report);
    }
    if let Some(msg) = &report.failure {
        eprintln!("qm: {msg}");
        return Err(Failure::Worker);
    }
    Ok(report.verdict)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn print_report(r: &Report) {
    println!(
        "betti    {:<4}  P = {}, euler {}",
        mark(r.betti.ok),
        r.betti.polynomial,
        r.betti.euler
    );
    for c in &r.hilbert.checks {
        println!("hilbert  {:<4}  {:<18} {}", mark(c.ok), c.name, c.result.line());
    }
    println!(
        "{:>5} {:>7} {:>8} {:>6} {:>6} {:>5} {:>14} {:>14}  status",
        "p", "planes", "generic", "right", "left", "|X|", "|M(F_p)|", "P(p)"
    );
    for l in &r.locus {
        let s = &l.summary;
        println!(
            "{:>5} {:>7} {:>8} {:>6} {:>6} {:>5} {:>14} {:>14}  {}",
            s.prime,
            s.planes,
            s.generic_planes,
            s.shared_right_planes,
            s.shared_left_planes,
            s.x_count,
            s.moduli_count,
            s.poincare_eval,
            mark(l.passed)
        );
        if let Some(o) = &l.raw_oracle {
            println!("      raw oracle: {}/{} planes", o.passed, o.planes);
        }
    }
    println!("verdict: {}", if r.verdict { "PASS" } else { "FAIL" });
}

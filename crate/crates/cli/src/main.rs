use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use superell::base::Base;
use superell::corpus::{parse_corpus, run_corpus};
use superell::lab::{run_suite, SUITES};
use superell::par::{set_thread_limit, Mode};
use superell::parse::parse_polynomial;
use superell::verdict::{analyze, Counterpart, ProblemSpec};
use superell::Error;

#[derive(Parser)]
#[command(name = "superell", version, about = "Non-isogeny certificates for superelliptic jacobians")]
struct Cli {
    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Q,
    Cyclo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a pair y^l = f(x), y^l = h(x), or f against an abstract variety.
    Analyze {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum, default_value = "q")]
        base: BaseArg,
        #[arg(long)]
        f: String,
        #[arg(long, required_unless_present = "abstract_y", conflicts_with = "abstract_y")]
        h: Option<String>,
        /// Assert that the counterpart's l-torsion Galois group has order prime to n.
        #[arg(long)]
        abstract_y: bool,
        /// Ignore the published knowledge rules.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exhaustive property suite.
    Lab { suite: String },
    /// Check a fixture file of problems against their expected verdicts.
    Corpus {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::InternalLimit(_) | Error::Internal(_) => 3,
        _ => 1,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("superell: {e}");
    ExitCode::from(exit_code(e))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    ell: u64,
    base: BaseArg,
    f: &str,
    h: Option<&str>,
    abstract_y: bool,
    strict: bool,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), Error> {
    let start = Instant::now();
    let base = match base {
        BaseArg::Q => Base::Rationals,
        BaseArg::Cyclo => Base::Cyclotomic(ell),
    };
    let f = parse_polynomial(f, base)?;
    let counterpart = match h {
        Some(h) => Counterpart::Polynomial(parse_polynomial(h, base)?),
        None => Counterpart::AbstractVariety { order_prime_to_n: abstract_y },
    };
    let mut cert = analyze(&ProblemSpec { ell, base, f, counterpart }, strict)?;
    cert.timing_ms = start.elapsed().as_millis() as u64;
    let body = match format {
        Format::Json => to_json(&cert) + "\n",
        Format::Text => cert.to_text(),
    };
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_lab(suite: &str, mode: Mode) -> ExitCode {
    if !SUITES.contains(&suite) {
        eprintln!("superell: unknown suite {suite:?}; expected one of {}", SUITES.join(", "));
        return ExitCode::from(2);
    }
    let reports = match run_suite(suite, mode) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut ok = true;
    for r in &reports {
        println!("{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.summary());
        for f in &r.failures {
            println!("    {f}");
        }
        ok &= r.passed();
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_corpus(path: &PathBuf, format: Format, mode: Mode) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("superell: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let entries = match parse_corpus(&text) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    let results = run_corpus(&entries, mode);
    match format {
        Format::Json => println!("{}", to_json(&results)),
        Format::Text => {
            for r in &results {
                println!("{} {}", if r.matched { "PASS" } else { "FAIL" }, r.name);
                for d in &r.diffs {
                    println!("    {d}");
                }
            }
            let matched = results.iter().filter(|r| r.matched).count();
            println!("{matched}/{} entries matched", results.len());
        }
    }
    if results.iter().all(|r| r.matched) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SUPERELL_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        set_thread_limit(n);
    }
    let mode = if cli.sequential { Mode::Sequential } else { Mode::Parallel };
    match &cli.command {
        Command::Analyze { ell, base, f, h, abstract_y, strict, format, out } => {
            match cmd_analyze(*ell, *base, f, h.as_deref(), *abstract_y, *strict, *format, out.as_ref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Command::Lab { suite } => cmd_lab(suite, mode),
        Command::Corpus { path, format } => cmd_corpus(path, *format, mode),
    }
}

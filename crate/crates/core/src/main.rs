//! Command-line front door: reproduce the threshold comparison, run
//! verification, search crossovers, and check user-supplied sequences.
//!
//! Exit status contract (scriptable):
//!   0  success; for `verify` the inequality certified, for `check-primitive`
//!      the sequence is primitive, for `crossover` a crossing was found
//!   1  computation succeeded but the property does not hold
//!   2  usage, domain or i/o errors

use clap::{Parser, Subcommand, ValueEnum};
use erdosum::counterexample::{fmt_f64, write_history_csv};
use erdosum::{
    certificate_for_checked, CrossoverOutcome, PairEnumeration, PrimeTable, SumConfig, SumResult,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "erdosum",
    version,
    about = "Certified Erdos sums over primes and prime-pair products, primitivity checking, \
             and threshold verification"
)]
struct Cli {
    /// Worker threads (0 = auto). Overrides ERDOSUM_THREADS.
    #[arg(long, global = true, env = "ERDOSUM_THREADS", default_value_t = 0)]
    threads: usize,

    /// Pair indices per accumulation chunk. Fixed chunking keeps results
    /// bit-identical across thread counts.
    #[arg(long, global = true, default_value_t = erdosum::DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Enumeration {
    /// Every ordered pair (p, q) contributes; p != q products count twice.
    Ordered,
    /// Each distinct product pq contributes once (the semiprime set sum).
    Distinct,
}

impl From<Enumeration> for PairEnumeration {
    fn from(e: Enumeration) -> Self {
        match e {
            Enumeration::Ordered => PairEnumeration::OrderedPairs,
            Enumeration::Distinct => PairEnumeration::DistinctProducts,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate all primes up to a limit; optionally save a binary table cache.
    Sieve {
        #[arg(long)]
        limit: u64,
        /// Write the table as a binary cache (magic PTAB1, delta varints).
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Certified Erdos sum over primes <= limit.
    SumPrimes {
        #[arg(long)]
        limit: u64,
        /// Load the prime table from a cache instead of sieving.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Certified Erdos sum over prime pairs (p, q) with p, q <= limit.
    SumSemiprimes {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        include_prime_squares: bool,
        #[arg(long, value_enum, default_value_t = Enumeration::Ordered)]
        enumeration: Enumeration,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Compare the pair sum against the prime sum at a threshold; exit 0
    /// only if the positive margin is certified against the error bounds.
    Verify {
        #[arg(long, default_value_t = 1_400_000)]
        threshold: u64,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        include_prime_squares: bool,
        #[arg(long, value_enum, default_value_t = Enumeration::Ordered)]
        enumeration: Enumeration,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Incremental scan for the first certified-positive prime threshold.
    Crossover {
        #[arg(long)]
        scan_limit: u64,
        /// Sample the margin history every N primes.
        #[arg(long, default_value_t = 1_000)]
        stride: u64,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        include_prime_squares: bool,
        #[arg(long, value_enum, default_value_t = Enumeration::Ordered)]
        enumeration: Enumeration,
        /// Also write the margin history as CSV to this path.
        #[arg(long)]
        history_out: Option<PathBuf>,
    },
    /// Check a newline-delimited integer file for primitivity.
    CheckPrimitive {
        #[arg(long)]
        input: PathBuf,
    },
    /// Certified Erdos sum of a primitive sequence read from a file.
    SumFile {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Serialize)]
struct SieveDocument {
    command: &'static str,
    limit: u64,
    prime_count: u64,
    largest_prime: Option<u64>,
    tool_version: &'static str,
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct SumDocument {
    command: &'static str,
    limit: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_enumeration: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    includes_prime_squares: Option<bool>,
    value: f64,
    error_bound: f64,
    term_count: u64,
    tool_version: &'static str,
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct VerifyDocument {
    #[serde(flatten)]
    report: erdosum::CounterexampleReport,
    tool_version: &'static str,
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct CrossoverDocument {
    command: &'static str,
    scan_limit: u64,
    stride: u64,
    pair_enumeration: &'static str,
    includes_prime_squares: bool,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_exceeding_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable_above: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    final_margin: Option<f64>,
    history: Vec<erdosum::HistorySample>,
    tool_version: &'static str,
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct CheckDocument {
    command: &'static str,
    input: String,
    primitive: bool,
    element_count: Option<u64>,
    certificate_kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[u64; 2]>,
    tool_version: &'static str,
    elapsed_seconds: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Errors only if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_or_sieve(table: Option<&PathBuf>, limit: u64) -> anyhow::Result<PrimeTable> {
    match table {
        Some(path) => {
            let t = PrimeTable::load_cache(path)?;
            if t.limit() < limit {
                anyhow::bail!(
                    "cached table only covers limit {}, need {limit}",
                    t.limit()
                );
            }
            Ok(t)
        }
        None => Ok(erdosum::sieve_primes(limit)?),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let Cli { chunk_size, format, command, .. } = cli;
    let cfg = |squares: bool, enumeration: Enumeration| SumConfig {
        chunk_size,
        include_prime_squares: squares,
        enumeration: enumeration.into(),
    };

    match command {
        Command::Sieve { limit, save } => {
            let table = erdosum::sieve_primes(limit)?;
            if let Some(path) = &save {
                table.save_cache(path)?;
            }
            let doc = SieveDocument {
                command: "sieve",
                limit,
                prime_count: table.len() as u64,
                largest_prime: table.primes().last().copied(),
                tool_version: TOOL_VERSION,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
                _ => {
                    println!("limit          {}", doc.limit);
                    println!("prime count    {}", doc.prime_count);
                    if let Some(p) = doc.largest_prime {
                        println!("largest prime  {p}");
                    }
                    if let Some(path) = &save {
                        println!("saved table    {}", path.display());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::SumPrimes { limit, table } => {
            let table = load_or_sieve(table.as_ref(), limit)?;
            let r = erdosum::sum_primes_with(&table, limit, &cfg(true, Enumeration::Ordered))?;
            emit_sum(format, "sum-primes", limit, None, None, &r, started)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::SumSemiprimes { limit, include_prime_squares, enumeration, table } => {
            let table = load_or_sieve(table.as_ref(), limit)?;
            let c = cfg(include_prime_squares, enumeration);
            let r = erdosum::sum_semiprimes_with(&table, limit, &c)?;
            emit_sum(
                format,
                "sum-semiprimes",
                limit,
                Some(c.enumeration.label()),
                Some(include_prime_squares),
                &r,
                started,
            )?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { threshold, include_prime_squares, enumeration, table } => {
            let c = cfg(include_prime_squares, enumeration);
            let report = match table {
                Some(_) => {
                    let t = load_or_sieve(table.as_ref(), threshold)?;
                    erdosum::verify_with_table(&t, threshold, &c)?
                }
                None => erdosum::verify(threshold, &c)?,
            };
            let certified = report.certified;
            let doc = VerifyDocument {
                report,
                tool_version: TOOL_VERSION,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
                _ => {
                    let r = &doc.report;
                    println!("threshold             {}", r.threshold);
                    println!("pair enumeration      {}", r.pair_enumeration);
                    println!("prime squares         {}", r.includes_prime_squares);
                    print_sum_lines("pair sum", &r.semiprime_sum);
                    print_sum_lines("prime sum", &r.prime_sum);
                    println!("margin                {}", fmt_f64(r.margin));
                    println!("certified             {}", r.certified);
                    println!("erdos bound           {}", fmt_f64(r.erdos_bound));
                    println!("clark bound           {}", fmt_f64(r.clark_bound));
                    for n in &r.notes {
                        println!("note: {n}");
                    }
                }
            }
            Ok(if certified { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Crossover {
            scan_limit,
            stride,
            include_prime_squares,
            enumeration,
            history_out,
        } => {
            let c = cfg(include_prime_squares, enumeration);
            let outcome = erdosum::crossover(scan_limit, stride, &c)?;
            let (found, first, stable, final_margin, history) = match outcome {
                CrossoverOutcome::Found(r) => {
                    (true, Some(r.first_exceeding_prime), Some(r.stable_above), None, r.history)
                }
                CrossoverOutcome::NotFound { final_margin, history } => {
                    (false, None, None, Some(final_margin), history)
                }
            };
            if let Some(path) = &history_out {
                let mut f = std::fs::File::create(path)?;
                write_history_csv(&mut f, &history)?;
            }
            let doc = CrossoverDocument {
                command: "crossover",
                scan_limit,
                stride,
                pair_enumeration: c.enumeration.label(),
                includes_prime_squares: include_prime_squares,
                found,
                first_exceeding_prime: first,
                stable_above: stable,
                final_margin,
                history,
                tool_version: TOOL_VERSION,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
                Format::Csv => {
                    let mut out = std::io::stdout().lock();
                    write_history_csv(&mut out, &doc.history)?;
                }
                Format::Text => {
                    println!("scan limit        {}", doc.scan_limit);
                    println!("pair enumeration  {}", doc.pair_enumeration);
                    match doc.first_exceeding_prime {
                        Some(p) => {
                            println!("first certified   {p}");
                            println!("stable above      {}", doc.stable_above.unwrap());
                        }
                        None => {
                            println!("first certified   none");
                            println!(
                                "final margin      {}",
                                fmt_f64(doc.final_margin.unwrap())
                            );
                        }
                    }
                    println!("history samples   {}", doc.history.len());
                }
            }
            Ok(if found { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::CheckPrimitive { input } => {
            let values = erdosum::read_sequence_file(&input)?;
            let (primitive, count, kind, witness) = match erdosum::check_primitive(values) {
                Ok(seq) => {
                    let cert = certificate_for_checked(&seq);
                    (true, Some(seq.len() as u64), Some(cert.kind.label()), None)
                }
                Err(erdosum::Error::NotPrimitive { a, b }) => (false, None, None, Some([a, b])),
                Err(e) => return Err(e.into()),
            };
            let doc = CheckDocument {
                command: "check-primitive",
                input: input.display().to_string(),
                primitive,
                element_count: count,
                certificate_kind: kind,
                witness,
                tool_version: TOOL_VERSION,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
                _ => match witness {
                    Some([a, b]) => println!("not primitive: {a} divides {b}"),
                    None => println!(
                        "primitive: {} elements ({})",
                        doc.element_count.unwrap(),
                        doc.certificate_kind.unwrap()
                    ),
                },
            }
            Ok(if primitive { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::SumFile { input } => {
            let values = erdosum::read_sequence_file(&input)?;
            let seq = erdosum::check_primitive(values)?;
            let c = SumConfig { chunk_size, ..SumConfig::default() };
            let r = erdosum::sum_sequence_with(&seq, &c);
            emit_sum(format, "sum-file", seq.len() as u64, None, None, &r, started)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_sum(
    format: Format,
    command: &'static str,
    limit: u64,
    enumeration: Option<&'static str>,
    squares: Option<bool>,
    r: &SumResult,
    started: Instant,
) -> anyhow::Result<()> {
    let doc = SumDocument {
        command,
        limit,
        pair_enumeration: enumeration,
        includes_prime_squares: squares,
        value: r.value,
        error_bound: r.error_bound,
        term_count: r.term_count,
        tool_version: TOOL_VERSION,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
        _ => {
            if let Some(e) = enumeration {
                println!("pair enumeration  {e}");
            }
            if let Some(s) = squares {
                println!("prime squares     {s}");
            }
            println!("value             {}", fmt_f64(doc.value));
            println!("error bound       {}", fmt_f64(doc.error_bound));
            println!("term count        {}", doc.term_count);
        }
    }
    Ok(())
}

fn print_sum_lines(name: &str, r: &SumResult) {
    println!("{name:<14}        {}", fmt_f64(r.value));
    println!("  error bound         {}", fmt_f64(r.error_bound));
    println!("  term count          {}", r.term_count);
}

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use alphahash::bench::{self, Algorithm, BenchConfig, Cell};
use alphahash::check::{self, CheckConfig};
use alphahash::commands::{self, GlobalizeAlgo};
use alphahash::generate::{Family, DEFAULT_SEED};
use alphahash::{parse_corpus, parse_term, Error, HashMode};

#[derive(Parser)]
#[command(
    name = "alphahash",
    version,
    about = "Hash λ-term positions modulo context-sensitive α-equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `position<TAB>hash` for every position of a closed term.
    Hash {
        /// File holding one term; `-` reads standard input.
        file: PathBuf,
        #[arg(long, default_value = "fast")]
        mode: HashMode,
        #[arg(long, default_value = "efficient")]
        algo: GlobalizeAlgo,
    },
    /// Count distinct hashes over all positions of a corpus of closed terms.
    Dedup {
        /// File with one term per line; `-` reads standard input.
        file: PathBuf,
        #[arg(long, default_value = "fast")]
        mode: HashMode,
    },
    /// Cross-check globalization against bisimulation and fork equivalence.
    Check {
        #[arg(long, default_value_t = CheckConfig::default().max_size)]
        max_size: usize,
        #[arg(long, default_value_t = CheckConfig::default().trials)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Use a broken fast combiner; the check is expected to fail.
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Time the algorithms on generated families; rows go to stdout, medians to stderr.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "random,linear,balanced")]
        families: Vec<Family>,
        #[arg(long, value_delimiter = ',', default_value = "naive,efficient,refine")]
        algorithms: Vec<Algorithm>,
        /// `2^a..2^b` or a comma-separated list.
        #[arg(long, default_value = "2^4..2^18", value_parser = bench::parse_sizes)]
        sizes: std::vec::Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        warmups: usize,
        /// Seconds per cell.
        #[arg(long, default_value_t = 60)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the median table here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Print a generated closed term.
    Gen {
        #[arg(long)]
        family: Family,
        /// Size for random and grown, n for linear, depth for balanced.
        #[arg(long)]
        param: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_input(file: &PathBuf) -> Result<String, ExitCode> {
    let mut s = String::new();
    let r = if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|x| s = x)
    };
    r.map(|_| s).map_err(|e| {
        eprintln!("error: {}: {e}", file.display());
        ExitCode::from(2)
    })
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::NotClosed => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<(), ExitCode> {
    let stdout = std::io::stdout();
    match cli.command {
        Command::Hash { file, mode, algo } => {
            let t = parse_term(&read_input(&file)?).map_err(fail)?;
            let rows = commands::hash_table(&t, mode, algo).map_err(fail)?;
            let _ = stdout.lock().write_all(rows.as_bytes());
        }
        Command::Dedup { file, mode } => {
            let terms = parse_corpus(&read_input(&file)?).map_err(fail)?;
            let r = commands::dedup(&terms, mode).map_err(fail)?;
            println!("{}\n{}", commands::DedupReport::HEADER, r.tsv());
            eprintln!("{r}");
        }
        Command::Check {
            max_size,
            trials,
            seed,
            inject_mutant,
        } => {
            let config = CheckConfig {
                max_size,
                trials,
                seed: seed.unwrap_or_else(|| commands::seed_from_env(DEFAULT_SEED)),
            };
            let make: &dyn Fn() -> alphahash::Hasher = if inject_mutant {
                &check::mutant_hasher
            } else {
                &alphahash::Hasher::fast
            };
            match check::run_check_with(&config, make).map_err(fail)? {
                Ok(r) => println!(
                    "ok: {} terms, {} positions, {} with fork closure",
                    r.terms, r.positions, r.fork_checked
                ),
                Err(c) => {
                    println!("counterexample: {}", c.term);
                    eprintln!("{c}");
                    return Err(ExitCode::from(1));
                }
            }
        }
        Command::Bench {
            families,
            algorithms,
            sizes,
            trials,
            warmups,
            budget,
            seed,
            summary,
        } => {
            let config = BenchConfig {
                families,
                algorithms,
                sizes,
                trials,
                warmups,
                budget: Duration::from_secs(budget),
                seed: seed.unwrap_or_else(|| commands::seed_from_env(DEFAULT_SEED)),
            };
            println!("{}", bench::ROW_HEADER);
            eprintln!("{}", bench::SUMMARY_HEADER);
            let summaries = bench::run_bench(
                &config,
                |row| println!("{row}"),
                |cell| match cell {
                    Cell::Done(s) => eprintln!("{s}"),
                    Cell::Skipped {
                        family,
                        algorithm,
                        size,
                        why,
                    } => eprintln!("# skipped {family} {algorithm} {size}: {why:?}"),
                },
            )
            .map_err(fail)?;
            if let Some(path) = summary {
                let mut text = format!("{}\n", bench::SUMMARY_HEADER);
                for s in &summaries {
                    text.push_str(&format!("{s}\n"));
                }
                std::fs::write(&path, text).map_err(|e| {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(2)
                })?;
            }
        }
        Command::Gen {
            family,
            param,
            seed,
        } => {
            let seed = seed.unwrap_or_else(|| commands::seed_from_env(DEFAULT_SEED));
            let t = family.generate(param, seed).map_err(fail)?;
            println!("{t}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

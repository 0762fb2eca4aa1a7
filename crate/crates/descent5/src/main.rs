//! Thin command-line front end over the library pipeline.

use clap::{Parser, Subcommand};
use descent5::cyclo::GeneratorTable;
use descent5::descent::BuildPolicy;
use descent5::pipeline::{
    analyze_pairs, build_database, census, census_with_conductor, io, local_only, stats, Database,
};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "descent5", version, about = "squareness of Tate-Shafarevich orders for 5-isogeny quotient surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the prime-ideal generator table for all primes up to a bound.
    Step0 {
        #[arg(long)]
        max_prime: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the per-curve database over all coprime (u, v) up to a height.
    BuildDb {
        #[arg(long)]
        max_height: u64,
        #[arg(long)]
        max_conductor: Option<u64>,
        /// Optional generator-ingestion file: lines `u v rank x1 y1 ...`.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze every unordered pair of curves in the database(s).
    Analyze {
        #[arg(long)]
        db: PathBuf,
        /// Optional second database, merged (deduplicated) before pairing.
        #[arg(long)]
        db2: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate tables over a results file.
    Stats {
        #[arg(long)]
        results: Option<PathBuf>,
        /// Curve database (needed for tables 1 and 2).
        #[arg(long)]
        db: Option<PathBuf>,
        /// One of 1..6 or "crosstabs".
        #[arg(long)]
        table: String,
    },
    /// Unconditional local-factor parity tally over all pairs up to a height.
    LocalOnly {
        #[arg(long)]
        max_height: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> Result<u8, Box<dyn std::error::Error>> {
    match Cli::parse().command {
        Command::Step0 { max_prime, out } => {
            let primes: Vec<u64> = descent5::arith::small_primes()
                .iter()
                .map(|&p| p as u64)
                .take_while(|&p| p <= max_prime)
                .collect();
            let table = GeneratorTable::build(primes)?;
            std::fs::write(out, io::write_step0(&table))?;
            Ok(0)
        }
        Command::BuildDb {
            max_height,
            max_conductor,
            generators,
            out,
        } => {
            let params = match max_conductor {
                Some(c) => census_with_conductor(max_height, &BigInt::from(c)),
                None => census(max_height),
            };
            let ingested = match generators {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    io::read_generators(&text, &path.display().to_string())?
                }
                None => Default::default(),
            };
            let db = build_database(&params, &BuildPolicy::default(), &ingested);
            let incomplete = db.incomplete_count();
            std::fs::write(out, io::write_database(&db.records))?;
            if incomplete > 0 {
                eprintln!("{incomplete} incomplete records (rank or generators unresolved)");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Analyze { db, db2, out } => {
            let mut records = io::read_database(
                &std::fs::read_to_string(&db)?,
                &db.display().to_string(),
            )?;
            if let Some(db2) = db2 {
                let extra = io::read_database(
                    &std::fs::read_to_string(&db2)?,
                    &db2.display().to_string(),
                )?;
                for rec in extra {
                    if !records.iter().any(|r| (r.u, r.v) == (rec.u, rec.v)) {
                        records.push(rec);
                    }
                }
            }
            records.sort_by_key(|r| (r.u, r.v));
            let incomplete = records.iter().filter(|r| !r.complete).count();
            let primes: Vec<u64> = {
                let mut p: Vec<u64> = records.iter().flat_map(|r| r.s_primes.clone()).collect();
                p.sort_unstable();
                p.dedup();
                p
            };
            let table = GeneratorTable::build(primes)?;
            let db = Database { records, table };
            let mut results = analyze_pairs(&db);
            results.sort_by_key(|r| (r.u1, r.v1, r.u2, r.v2));
            std::fs::write(out, io::write_results(&results))?;
            if incomplete > 0 {
                eprintln!("{incomplete} incomplete records skipped");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Stats { results, db, table } => {
            let load_results = |path: &Option<PathBuf>| -> Result<_, Box<dyn std::error::Error>> {
                let path = path.as_ref().ok_or("this table needs --results")?;
                Ok(io::read_results(
                    &std::fs::read_to_string(path)?,
                    &path.display().to_string(),
                )?)
            };
            let load_db = |path: &Option<PathBuf>| -> Result<_, Box<dyn std::error::Error>> {
                let path = path.as_ref().ok_or("this table needs --db")?;
                Ok(io::read_database(
                    &std::fs::read_to_string(path)?,
                    &path.display().to_string(),
                )?)
            };
            let height_ladder = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 200, 500, 1000];
            let conductor_ladder = [
                1_000, 5_000, 10_000, 20_000, 40_000, 60_000, 80_000, 100_000, 200_000, 400_000,
                600_000, 800_000, 1_000_000,
            ];
            match table.as_str() {
                "1" => {
                    let recs = load_db(&db)?;
                    print!(
                        "{}",
                        stats::curve_count_table(&recs, &height_ladder, Some(1_000_000))
                    );
                }
                "2" => {
                    let recs = load_db(&db)?;
                    print!("{}", stats::curve_count_table(&recs, &height_ladder, None));
                }
                "3" | "4" => {
                    let res = load_results(&results)?;
                    print!("{}", stats::render_rank_class_table(&res));
                }
                "5" => {
                    let res = load_results(&results)?;
                    print!("{}", stats::cumulative_table(&res, &conductor_ladder, true));
                }
                "6" => {
                    let res = load_results(&results)?;
                    print!("{}", stats::cumulative_table(&res, &height_ladder, false));
                }
                "crosstabs" => {
                    let res = load_results(&results)?;
                    print!("{}", stats::render_cross_tabs(&res));
                }
                other => return Err(format!("unknown table {other:?}").into()),
            }
            Ok(0)
        }
        Command::LocalOnly { max_height, out } => {
            let tally = local_only(max_height);
            let rendered = stats::render_local_tally(&tally);
            match out {
                Some(path) => std::fs::write(path, &rendered)?,
                None => print!("{rendered}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

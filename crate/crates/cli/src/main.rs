//! `hadamard`: generate, combine, check and classify Hadamard matrices.
//!
//! Exit codes: 0 success, 1 domain failure (not Hadamard, violated
//! construction precondition), 2 I/O, parse or usage failure.

mod pool;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hadamard_core::{
    apply_transform, build_pool, explore, find_violation, modified, no_song, normalize, paley_i,
    read_matrix, signature, sylvester_power, sylvester_product, write_matrix, Alphabet,
    BinaryMatrix, Construction, EquivalenceTransform, Error, ExploreOptions, Family,
    HadamardMatrix, ModifiedInputs, PoolSpec, Strategy, Violation,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::pool::{parse_pool_arg, PoolArg};

#[derive(Parser, Debug)]
#[command(
    name = "hadamard",
    version,
    about = "Sylvester-type Hadamard matrix constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write `+`/`-` instead of `0`/`1`.
    #[arg(long)]
    pm: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenFamily {
    Sylvester,
    Paley1,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a base matrix.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        /// Sylvester exponent: order 2^t.
        #[arg(long, required_if_eq("family", "sylvester"))]
        t: Option<u32>,
        /// Paley prime, q = 3 mod 4: order q + 1.
        #[arg(long, required_if_eq("family", "paley1"))]
        q: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify that a matrix file holds a Hadamard matrix.
    Check { path: PathBuf },
    /// Sylvester product A ⊗ B.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generalized Sylvester construction from C (order m) and B1..Bm (order k).
    Nosong {
        #[arg(long)]
        c: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-pool construction from A1..Am (order k) and B1..Bk (order m).
    Modified {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print order, rank, kernel dimension and minimum distance of the code.
    Invariants { path: PathBuf },
    /// Apply a seeded random equivalence transform.
    Transform {
        path: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a construction over pool assignments and tally signatures.
    Explore {
        #[arg(long)]
        construction: String,
        /// ORDER:FAMILY[+FAMILY] or file:PATH[,PATH...]
        #[arg(long)]
        pool_a: String,
        #[arg(long)]
        pool_b: String,
        /// `exhaustive` or `sampled:COUNT`.
        #[arg(long, default_value = "exhaustive")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seeded equivalence variants added per base matrix.
        #[arg(long, default_value_t = 0)]
        variants: usize,
        #[arg(long, default_value_t = hadamard_core::explorer::DEFAULT_EXHAUSTIVE_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Input(String),
}

impl Failure {
    fn from_core(context: &str, e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(format!("{context}: {e}")),
            other => Failure::Domain(format!("{context}: {other}")),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_file(path: &Path) -> CliResult<BinaryMatrix> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    read_matrix(&text).map_err(|e| Failure::from_core(&path.display().to_string(), e))
}

fn read_hadamard(path: &Path) -> CliResult<HadamardMatrix> {
    let m = read_file(path)?;
    match find_violation(&m) {
        None => Ok(HadamardMatrix::new(m).expect("no violation found")),
        Some(v) => Err(Failure::Domain(format!(
            "{}: not a Hadamard matrix: {}",
            path.display(),
            describe(&v)
        ))),
    }
}

fn read_all(paths: &[PathBuf]) -> CliResult<Vec<HadamardMatrix>> {
    paths.iter().map(|p| read_hadamard(p)).collect()
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::RowDistance {
            first,
            second,
            distance,
        } => format!(
            "rows {} and {} are at distance {distance}",
            first + 1,
            second + 1
        ),
        other => other.to_string(),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_matrix(h: &HadamardMatrix, output: &OutputArgs) -> CliResult<()> {
    let alphabet = if output.pm {
        Alphabet::PlusMinus
    } else {
        Alphabet::Binary
    };
    emit(
        &write_matrix(h.as_matrix(), alphabet),
        output.out.as_deref(),
    )
}

fn build_pool_arg(arg: &str, variants: usize, seed: u64) -> CliResult<Vec<HadamardMatrix>> {
    let parsed = parse_pool_arg(arg).map_err(Failure::Input)?;
    let spec = match parsed {
        PoolArg::Generated {
            order,
            sylvester,
            paley1,
        } => {
            let mut families = Vec::new();
            if sylvester {
                families.push(Family::Sylvester);
            }
            if paley1 {
                families.push(Family::Paley1);
            }
            PoolSpec::new(order, families)
        }
        PoolArg::Files(paths) => {
            let ms = read_all(&paths)?;
            PoolSpec::new(ms[0].order(), vec![Family::Supplied(ms)])
        }
    };
    build_pool(&spec.with_variants(variants, seed)).map_err(|e| Failure::from_core(arg, e))
}

fn parse_strategy(s: &str) -> CliResult<Strategy> {
    if s == "exhaustive" {
        return Ok(Strategy::Exhaustive);
    }
    s.strip_prefix("sampled:")
        .and_then(|n| n.parse().ok())
        .map(|count| Strategy::Sampled { count })
        .ok_or_else(|| {
            Failure::Input(format!(
                "strategy must be exhaustive or sampled:COUNT, got {s:?}"
            ))
        })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen {
            family,
            t,
            q,
            output,
        } => {
            let h = match family {
                GenFamily::Sylvester => sylvester_power(t.expect("clap enforces --t")),
                GenFamily::Paley1 => paley_i(q.expect("clap enforces --q")),
            }
            .map_err(|e| Failure::from_core("gen", e))?;
            emit_matrix(&h, &output)
        }
        Command::Check { path } => {
            let m = read_file(&path)?;
            match find_violation(&m) {
                None => {
                    println!("HADAMARD order={}", m.nrows());
                    Ok(())
                }
                Some(v @ Violation::RowDistance { first, second, .. }) => {
                    println!(
                        "NOT HADAMARD: {} (expected {})",
                        describe(&v),
                        m.nrows() / 2
                    );
                    println!("row {}: {}", first + 1, m.row(first));
                    println!("row {}: {}", second + 1, m.row(second));
                    Err(Failure::Domain(String::new()))
                }
                Some(v) => {
                    println!("NOT HADAMARD: {v}");
                    Err(Failure::Domain(String::new()))
                }
            }
        }
        Command::Product { a, b, output } => {
            let (ha, hb) = (read_hadamard(&a)?, read_hadamard(&b)?);
            emit_matrix(&sylvester_product(&ha, &hb), &output)
        }
        Command::Nosong { c, b, output } => {
            let c = read_hadamard(&c)?;
            let bs = read_all(&b)?;
            let h = no_song(&c, &bs).map_err(|e| Failure::from_core("nosong", e))?;
            emit_matrix(&h, &output)
        }
        Command::Modified { a, b, output } => {
            let inputs = ModifiedInputs::new(read_all(&a)?, read_all(&b)?)
                .map_err(|e| Failure::from_core("modified", e))?;
            emit_matrix(&modified(&inputs), &output)
        }
        Command::Invariants { path } => {
            let h = read_hadamard(&path)?;
            let sig = signature(&h).map_err(|e| Failure::from_core("invariants", e))?;
            println!("{sig}");
            Ok(())
        }
        Command::Transform {
            path,
            seed,
            normalize: norm,
            output,
        } => {
            let h = read_hadamard(&path)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = EquivalenceTransform::random(h.order(), &mut rng);
            let mut g = apply_transform(&h, &t).map_err(|e| Failure::from_core("transform", e))?;
            if norm {
                g = normalize(&g);
            }
            emit_matrix(&g, &output)
        }
        Command::Explore {
            construction,
            pool_a,
            pool_b,
            strategy,
            seed,
            variants,
            cap,
            format,
            out,
        } => {
            let construction: Construction = construction
                .parse()
                .map_err(|e: Error| Failure::Input(e.to_string()))?;
            let strategy = parse_strategy(&strategy)?;
            let pa = build_pool_arg(&pool_a, variants, seed)?;
            let pb = build_pool_arg(&pool_b, variants, seed.wrapping_add(1))?;
            let opts = ExploreOptions {
                exhaustive_cap: cap,
                ..ExploreOptions::new(construction, strategy, seed)
            };
            let report = explore(&pa, &pb, &opts).map_err(|e| Failure::from_core("explore", e))?;
            let text = match format {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Csv => report.to_csv(),
            };
            emit(&text, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

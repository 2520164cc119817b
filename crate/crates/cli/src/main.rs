//! Command-line interface for generalized Jack polynomials.
//!
//! Subcommands:
//!   expand  — one polynomial in the (dual) Schur basis
//!   table   — all polynomials of a given degree
//!   matrix  — a raw transition block, optionally cached on disk
//!   verify  — the exact verification suites, reported as JSON

mod cache;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gjack_core::envelope::{jack, Kind, Mode, Variant};
use gjack_core::oracle::{
    self, eigen_check, eigen_check_random, Report,
};
use gjack_core::partition::MultiPartition;
use gjack_core::ring::Assignment;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use format::{
    expansion_json, expansion_latex, expansion_text, matrix_latex, matrix_text, Header, OutFormat,
};

#[derive(Parser)]
#[command(name = "gjack", version, about = "Generalized Jack polynomials, exactly")]
struct Cli {
    /// Size of the rayon thread pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for cached symbolic blocks (overrides GJACK_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    J,
    Jstar,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::J => Variant::J,
            VariantArg::Jstar => Variant::JStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    T,
    Tstar,
    U,
    Ustar,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::T => Kind::T,
            KindArg::Tstar => Kind::TStar,
            KindArg::U => Kind::U,
            KindArg::Ustar => Kind::UStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Specialized,
}

/// Flags shared by every computing subcommand.
#[derive(Debug, Args)]
struct ModeOpts {
    /// Symbolic coefficients, or exact rationals at a random assignment.
    #[arg(long, value_enum, default_value = "symbolic")]
    mode: ModeArg,

    /// RNG seed for the specialized assignment (and random checks).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModeOpts {
    fn resolve(&self, rank: usize) -> (Mode, Option<Assignment>) {
        match self.mode {
            ModeArg::Symbolic => (Mode::Symbolic, None),
            ModeArg::Specialized => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let a = Assignment::random(rank, &mut rng);
                (Mode::Specialized(a.clone()), Some(a))
            }
        }
    }

    fn header(&self, command: &str, rank: usize, assignment: Option<&Assignment>) -> Header {
        Header {
            command: command.to_string(),
            rank,
            mode: match self.mode {
                ModeArg::Symbolic => "symbolic".to_string(),
                ModeArg::Specialized => "specialized".to_string(),
            },
            seed: matches!(self.mode, ModeArg::Specialized).then_some(self.seed),
            assignment: assignment.map(|a| a.values.iter().map(|v| v.to_string()).collect()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Expand one polynomial over the (dual) Schur basis.
    Expand {
        /// Number of colors.
        #[arg(long, default_value_t = 1)]
        r: usize,

        /// The labeling diagram, e.g. "[2,1]" or "([1],[2])".
        #[arg(long)]
        mp: String,

        #[arg(long, value_enum, default_value = "j")]
        variant: VariantArg,

        /// Refuse diagrams above this size (symbolic blow-up guard).
        #[arg(long, default_value_t = 8)]
        max_n: u32,

        #[command(flatten)]
        mode: ModeOpts,
    },

    /// Expand every polynomial of a given degree.
    Table {
        #[arg(long, default_value_t = 1)]
        r: usize,

        /// Total number of boxes.
        #[arg(long)]
        n: u32,

        #[arg(long, value_enum, default_value = "j")]
        variant: VariantArg,

        #[command(flatten)]
        mode: ModeOpts,
    },

    /// Print one transition block; symbolic blocks go through the cache.
    Matrix {
        #[arg(long, default_value_t = 1)]
        r: usize,

        #[arg(long)]
        n: u32,

        #[arg(long, value_enum, default_value = "t")]
        kind: KindArg,

        #[command(flatten)]
        mode: ModeOpts,
    },

    /// Run a verification suite; exits nonzero on any failure.
    Verify {
        /// reference | duality | cauchy | symmetry | degeneration |
        /// hamiltonian | matrix-identities | all
        #[arg(long, default_value = "all")]
        suite: String,

        #[arg(long, default_value_t = 2)]
        r: usize,

        /// Degree ceiling for the chosen suites.
        #[arg(long, default_value_t = 3)]
        max_n: u32,

        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_diagram(s: &str, rank: usize) -> Result<MultiPartition> {
    // Accept both `[1],[]` and the parenthesized form `([1],[])`.
    let trimmed = s.trim();
    let bare = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(trimmed);
    let mp: MultiPartition = bare
        .parse()
        .with_context(|| format!("parsing diagram {s:?}"))?;
    if mp.rank() != rank {
        bail!("diagram {s} has {} components but --r is {rank}", mp.rank());
    }
    Ok(mp)
}

fn emit_expansion(
    lam: &MultiPartition,
    variant: Variant,
    mode: &Mode,
    header: &Header,
    fmt: OutFormat,
) -> Result<()> {
    let name = match variant {
        Variant::J => "J",
        Variant::JStar => "J*",
    };
    let e = jack(lam, variant, mode)?;
    match fmt {
        OutFormat::Text => println!("{}", expansion_text(&e, name)),
        OutFormat::Latex => println!("{}", expansion_latex(&e, name)),
        OutFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&expansion_json(&e, name, header))?
        ),
    }
    Ok(())
}

fn run_suite(name: &str, r: usize, max_n: u32, seed: u64) -> Result<Vec<Report>> {
    let n_small = max_n.min(3);
    let reports = match name {
        "reference" => vec![oracle::verify_known_expansions()?],
        "duality" => (1..=r)
            .map(|rk| oracle::verify_duality(rk, if rk >= 3 { max_n.min(2) } else { n_small }))
            .collect::<Result<_, _>>()?,
        "cauchy" => {
            let mut v = Vec::new();
            for rk in 1..=r.min(2) {
                v.push(oracle::verify_cauchy(rk, max_n)?);
                v.push(oracle::verify_cauchy_finite(rk, n_small, 2)?);
            }
            v
        }
        "symmetry" => (1..=r)
            .map(|rk| oracle::verify_symmetries(rk, n_small))
            .collect::<Result<_, _>>()?,
        "degeneration" => (1..=r.min(2))
            .map(|rk| oracle::verify_degeneration_range(rk, max_n))
            .collect::<Result<_, _>>()?,
        "matrix-identities" => {
            let mut v = Vec::new();
            for rk in 1..=r {
                let cap = if rk >= 3 { n_small.min(2) } else { n_small };
                for n in 0..=cap {
                    v.push(oracle::verify_matrix_identities(rk, n)?);
                }
            }
            v
        }
        "hamiltonian" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = Vec::new();
            for rk in 1..=r {
                for n in 0..=n_small {
                    for lam in MultiPartition::all_of(rk, n) {
                        for variant in [Variant::J, Variant::JStar] {
                            let rep = if rk <= 2 && n <= 3 {
                                eigen_check(&lam, variant, &Mode::Symbolic)?
                            } else {
                                eigen_check_random(&lam, variant, &mut rng)?
                            };
                            v.push(rep);
                        }
                    }
                }
            }
            v
        }
        other => bail!("unknown suite {other:?}"),
    };
    Ok(reports)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring thread pool")?;
    }
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("GJACK_CACHE").map(PathBuf::from));

    match &cli.command {
        Command::Expand {
            r,
            mp,
            variant,
            max_n,
            mode,
        } => {
            let lam = parse_diagram(mp, *r)?;
            if lam.size() > *max_n {
                bail!(
                    "diagram {lam} has {} boxes; raise --max-n to go above {max_n}",
                    lam.size()
                );
            }
            let (m, a) = mode.resolve(*r);
            let header = mode.header("expand", *r, a.as_ref());
            emit_expansion(&lam, (*variant).into(), &m, &header, cli.format)?;
            Ok(true)
        }
        Command::Table { r, n, variant, mode } => {
            let (m, a) = mode.resolve(*r);
            let header = mode.header("table", *r, a.as_ref());
            for lam in MultiPartition::all_of(*r, *n) {
                emit_expansion(&lam, (*variant).into(), &m, &header, cli.format)?;
            }
            Ok(true)
        }
        Command::Matrix { r, n, kind, mode } => {
            let (m, a) = mode.resolve(*r);
            let block = cache::load_or_compute((*kind).into(), *r, *n, &m, cache_dir.as_deref())?;
            if let (Some(dir), Mode::Symbolic) = (cache_dir.as_deref(), &m) {
                eprintln!(
                    "cache: {}",
                    cache::block_path(dir, (*kind).into(), *r, *n).display()
                );
            }
            match cli.format {
                OutFormat::Text => print!("{}", matrix_text(&block)),
                OutFormat::Latex => print!("{}", matrix_latex(&block)),
                OutFormat::Json => {
                    let header = mode.header("matrix", *r, a.as_ref());
                    let entries: Vec<Vec<String>> = block
                        .entries
                        .iter()
                        .map(|row| row.iter().map(|e| e.to_string()).collect())
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "header": header,
                            "kind": block.kind.as_str(),
                            "n": block.n,
                            "labels": block.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                            "entries": entries,
                        }))?
                    );
                }
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            r,
            max_n,
            seed,
        } => {
            let suites: Vec<&str> = if suite == "all" {
                vec![
                    "reference",
                    "duality",
                    "cauchy",
                    "symmetry",
                    "degeneration",
                    "hamiltonian",
                    "matrix-identities",
                ]
            } else {
                vec![suite.as_str()]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for s in suites {
                let t = Instant::now();
                let batch = run_suite(s, *r, *max_n, *seed)?;
                let pass = batch.iter().all(Report::passed);
                all_pass &= pass;
                eprintln!(
                    "suite {s}: {} [{:.1}s]",
                    if pass { "pass" } else { "FAIL" },
                    t.elapsed().as_secs_f64()
                );
                reports.extend(batch);
            }
            println!("{}", serde_json::to_string_pretty(&reports)?);
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

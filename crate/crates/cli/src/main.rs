//! `ltensor`: exact discrete moment tensors, Ehrhart tensors and tensor
//! valuations on lattice polytopes.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ltensor",
    version,
    about = "Exact tensor valuations on lattice polytopes"
)]
struct Cli {
    /// Report timing on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Polytope JSON file `{"vertices": [[..], ..]}`; stdin when omitted.
    path: Option<PathBuf>,
}

#[derive(Args)]
struct Rank {
    /// Tensor rank r.
    #[arg(short, long, default_value_t = 0)]
    r: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice points of P and of its relative interior.
    Count(Input),
    /// Discrete moment tensor L^r(P).
    Tensor {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rank: Rank,
        /// Sum over the relative interior instead.
        #[arg(long)]
        relint: bool,
    },
    /// Ehrhart tensors L^r_0(P), ..., L^r_{n+r}(P).
    Ehrhart {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rank: Rank,
    },
    /// Reciprocity between the relative interior and the Ehrhart tensors.
    Reciprocity {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rank: Rank,
    },
    /// Translation covariance of the Ehrhart tensors.
    Covariance {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rank: Rank,
        /// Translation vector, e.g. `1,-2`; random shifts when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        shift: Option<Vec<i64>>,
        #[command(flatten)]
        trials: Trials,
    },
    /// SL_n(Z) equivariance of the Ehrhart tensors.
    Equivariance {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rank: Rank,
        /// Row-major matrix with rows separated by `;`, e.g. `1,1;0,1`;
        /// random maps when omitted.
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: Option<Matrix>,
        #[command(flatten)]
        trials: Trials,
    },
    /// The rank-9 valuation N(P) = sum of L^3_1(S)^3 over a unimodular
    /// triangulation of a lattice polygon.
    Nval {
        #[command(flatten)]
        input: Input,
        /// Compare N across this many flip-walked triangulations.
        #[arg(long, default_value_t = 0)]
        check_independence: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank of the linear system cutting out simple, equivariant,
    /// translation invariant valuations evaluated at T_n.
    Rank(RankArgs),
}

#[derive(Args)]
struct Trials {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 1)]
    trials: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Odd,
    Even,
}

#[derive(Args)]
struct RankArgs {
    /// Ambient dimension: 2 for the planar system, 3 or more for prisms.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    r: Option<u32>,
    /// Reflection component of the planar system.
    #[arg(long, value_enum, default_value = "plus")]
    parity: ParityArg,
    /// Use the row-by-row transcription of the planar relations.
    #[arg(long)]
    transcribed: bool,
    /// Prism coordinates known to vanish, by parity of the last exponent.
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    /// Print a basis of the kernel as tensors.
    #[arg(long)]
    kernel: bool,
    /// Comma-separated odd ranks; prints the planar survey as CSV.
    #[arg(long, value_delimiter = ',')]
    survey: Option<Vec<u32>>,
}

#[derive(Clone)]
struct Matrix(Vec<Vec<i64>>);

fn parse_matrix(s: &str) -> Result<Matrix, String> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|e| format!("bad matrix entry {x:?}: {e}"))
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Matrix)
}

fn read_input(input: &Input) -> anyhow::Result<lattice_tensor::LatticePolytope> {
    let text = match &input.path {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    let p = lattice_tensor::json::parse_polytope(&text).context("invalid polytope")?;
    if p.is_empty() {
        bail!("invalid polytope: no vertices");
    }
    Ok(p)
}

/// Result of a subcommand: text for stdout and whether verification passed.
pub struct Report {
    pub output: String,
    pub passed: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Report {
            output,
            passed: true,
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    use commands as c;
    match &cli.command {
        Command::Count(input) => c::count_points(&read_input(input)?),
        Command::Tensor {
            input,
            rank,
            relint,
        } => c::moment(&read_input(input)?, rank.r, *relint),
        Command::Ehrhart { input, rank } => c::ehrhart(&read_input(input)?, rank.r),
        Command::Reciprocity { input, rank } => c::reciprocity(&read_input(input)?, rank.r),
        Command::Covariance {
            input,
            rank,
            shift,
            trials,
        } => c::covariance(
            &read_input(input)?,
            rank.r,
            shift.as_deref(),
            trials.seed,
            trials.trials,
        ),
        Command::Equivariance {
            input,
            rank,
            matrix,
            trials,
        } => c::equivariance(
            &read_input(input)?,
            rank.r,
            matrix.as_ref().map(|m| m.0.as_slice()),
            trials.seed,
            trials.trials,
        ),
        Command::Nval {
            input,
            check_independence,
            seed,
        } => c::nval(&read_input(input)?, *check_independence, *seed),
        Command::Rank(args) => {
            let parity = match args.parity {
                ParityArg::Plus => lattice_tensor::Parity::Plus,
                ParityArg::Minus => lattice_tensor::Parity::Minus,
            };
            let filter = match args.filter {
                FilterArg::All => lattice_tensor::CoordinateFilter::All,
                FilterArg::Odd => lattice_tensor::CoordinateFilter::EnOdd,
                FilterArg::Even => lattice_tensor::CoordinateFilter::EnEven,
            };
            if let Some(rs) = &args.survey {
                return c::survey(rs);
            }
            let Some(r) = args.r else {
                bail!("rank needs --r or --survey");
            };
            c::rank(args.n, r, parity, filter, args.transcribed, args.kernel)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(report) => {
            println!("{}", report.output);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

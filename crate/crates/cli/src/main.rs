//! `arank`: exact verification of tensor degeneration identities and
//! certified numeric bounds derived from them.
//!
//! Exit codes: 0 on success, 1 when a verification or assertion in the
//! report ledger fails, 2 on input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use arank_cli::commands::{self, Env, VerifyTarget};
use arank_cli::report::{self, Format};
use arank_cli::CliError;

use arank_core::spectrum::RealCtx;

#[derive(Parser)]
#[command(
    name = "arank",
    version,
    about = "Exact tensor degeneration verification and certified rank-bound calculus"
)]
struct Cli {
    /// Primary tolerance of the command (bisection or optimizer gap).
    #[arg(long, global = true)]
    tol: Option<String>,

    /// Working precision in significant decimal digits (minimum 15).
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,

    /// Imported numeric upper bound on the matrix multiplication exponent.
    #[arg(long = "omega-bar", global = true, default_value = "2.371339")]
    omega_bar: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,

    /// Append-only results cache for optimizer runs.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Seed for the deterministic random generators.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Asymptotic-rank upper bounds for the small CW tensors.
    CwTable {
        /// Range of q values, e.g. `2..10`.
        #[arg(long, default_value = "2..10")]
        q: String,
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: u32,
        /// Also compute the iterated bound at the minimizing level.
        #[arg(long)]
        iterated: bool,
    },
    /// Diagonal 3τ and the certified maximum for an identity file.
    Omega {
        path: PathBuf,
        #[arg(long)]
        diagonal_only: bool,
        /// Skip closing the identity set under mode permutations.
        #[arg(long)]
        no_symmetrize: bool,
        /// Add the optional constraint θ1+θ2+θ3 ≥ 2.
        #[arg(long)]
        assume_sum_ge_2: bool,
    },
    /// Diagonal 3τ only.
    Tau { path: PathBuf },
    /// Mechanical verification of the bundled constructions.
    Verify {
        #[command(subcommand)]
        target: VerifyCmd,
    },
    /// One-slice and partitioned bounds for d×d×d tensors.
    GenericBounds {
        #[arg(long, default_value = "3..12")]
        d: String,
    },
    /// Closed-form bound formulas.
    Bound {
        #[command(subcommand)]
        which: BoundCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Border identity of the small CW tensor at a tensor power.
    CwIdentity {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// The rank-q slice matrix of the CW decomposition.
    Minrank {
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// One-slice speedup, either built in (`--q`, `--power`) or from files.
    OneSlice {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Iterated speedup bookkeeping, verified symbolically when small.
    Iterate {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// The direct-sum identity for given partitions.
    DirectSum {
        #[arg(long = "n-parts", value_delimiter = ',', required = true)]
        n_parts: Vec<usize>,
        #[arg(long = "m-parts", value_delimiter = ',', required = true)]
        m_parts: Vec<usize>,
    },
    /// Compression of a one-slice direct sum by a seeded random subspace.
    Compression {
        #[arg(long, value_delimiter = ',', required = true)]
        widths: Vec<usize>,
        #[arg(long, required = true)]
        codim: usize,
    },
    /// Round-trip of seeded 3×3×3 tensors through the normal form.
    #[command(name = "generic-333")]
    Generic333 {
        #[arg(long, default_value_t = 3)]
        count: u32,
    },
    /// Grid monotonicity of the generic-bound objectives.
    Monotonicity {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,10")]
        d: Vec<u64>,
        #[arg(long = "grid-step", default_value = "0.001")]
        grid_step: String,
        #[arg(long, value_delimiter = ',', default_values_t = [
            "2".to_string(), "2.371339".to_string(), "3".to_string()
        ])]
        varpi: Vec<String>,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// `r + s^(ω̄/3)`.
    Toy {
        #[arg(long, required = true)]
        r: u64,
        #[arg(long, required = true)]
        s: u64,
    },
    /// `r + s^e − t^e` with the branch split on `t` vs `s`.
    ThreeDir {
        #[arg(long, required = true)]
        r: u64,
        #[arg(long, required = true)]
        s: u64,
        #[arg(long, required = true)]
        t: u64,
    },
}

fn run(cli: Cli) -> Result<(report::ReportDocument, Format), CliError> {
    if cli.precision < 15 {
        return Err(CliError::Input(
            "precision must be at least 15 digits".into(),
        ));
    }
    let ctx = RealCtx::new(cli.precision);
    let omega_bar = ctx
        .from_str(&cli.omega_bar)
        .map_err(|e| CliError::Input(e.to_string()))?;
    if omega_bar < ctx.from_i64(2) || omega_bar > ctx.from_i64(3) {
        return Err(CliError::Input("omega-bar must lie in [2, 3]".into()));
    }
    let env = Env {
        ctx,
        omega_bar,
        omega_bar_text: cli.omega_bar.clone(),
        tol: cli.tol.clone(),
        seed: cli.seed,
        cache: cli.cache.clone(),
    };
    let doc = match cli.command {
        Command::CwTable { q, n_max, iterated } => {
            commands::cmd_cw_table(&env, &q, n_max, iterated)?
        }
        Command::Omega {
            path,
            diagonal_only,
            no_symmetrize,
            assume_sum_ge_2,
        } => commands::cmd_omega(&env, &path, diagonal_only, no_symmetrize, assume_sum_ge_2)?,
        Command::Tau { path } => commands::cmd_tau(&env, &path)?,
        Command::GenericBounds { d } => commands::cmd_generic_bounds(&env, &d)?,
        Command::Bound { which } => match which {
            BoundCmd::Toy { r, s } => commands::cmd_bound_toy(&env, r, s)?,
            BoundCmd::ThreeDir { r, s, t } => commands::cmd_bound_three_dir(&env, r, s, t)?,
        },
        Command::Verify { target } => {
            let target = match target {
                VerifyCmd::CwIdentity { q, power } => VerifyTarget::CwIdentity { q, power },
                VerifyCmd::Minrank { q } => VerifyTarget::Minrank { q },
                VerifyCmd::OneSlice {
                    q,
                    power,
                    decomposition,
                    weights,
                } => VerifyTarget::OneSlice {
                    q,
                    power,
                    decomposition,
                    weights,
                },
                VerifyCmd::Iterate { q, n } => VerifyTarget::Iterate { q, n },
                VerifyCmd::DirectSum { n_parts, m_parts } => {
                    VerifyTarget::DirectSum { n_parts, m_parts }
                }
                VerifyCmd::Compression { widths, codim } => {
                    VerifyTarget::Compression { widths, codim }
                }
                VerifyCmd::Generic333 { count } => VerifyTarget::Generic333 { count },
                VerifyCmd::Monotonicity {
                    d,
                    grid_step,
                    varpi,
                } => VerifyTarget::Monotonicity {
                    d,
                    grid_step,
                    varpi,
                },
            };
            commands::cmd_verify(&env, target)?
        }
    };
    Ok((doc, cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, format)) => {
            print!("{}", doc.render(format));
            if doc.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Core(_) => ExitCode::from(1),
            }
        }
    }
}

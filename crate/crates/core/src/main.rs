use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dynr::cli::{self, OmegaSpec, OutputFormat, RunConfig, Suite};
use dynr::rmat::Method;
use dynr::{Error, Tolerances};

#[derive(Parser)]
#[command(name = "dynr", version)]
#[command(about = "Canonical dynamical r-matrices on self-dual Lie algebras and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on an algebra
    Verify(VerifyArgs),
    /// Check the combinatorial and analytic scalar identities
    Identities {
        #[arg(long, default_value_t = 10)]
        max_order: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "text")]
        output: String,
    },
    /// List built-in algebras
    Catalog,
    /// Check the Lie algebra axioms and the invariant form
    Validate {
        /// Catalog expression or algebra file
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "text")]
        output: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog expression (sl2, abelian(3), sum(sl2,sl2), ...) or algebra file
    #[arg(long)]
    algebra: String,
    /// `random:<count>:<seed>`, coordinates, or a label combination; `;` separates elements
    #[arg(long)]
    omega: Option<String>,
    /// spectral | contour | taylor
    #[arg(long, default_value = "spectral")]
    method: String,
    /// Residual tolerance for the Yang-Baxter, antisymmetry and equivariance checks
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    tol_exact: Option<f64>,
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    delta_pole: Option<f64>,
    /// Initial quadrature nodes per contour
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "text")]
    output: String,
    /// Comma-separated suites, or `all`
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    /// Record per-entry wall time in the report
    #[arg(long)]
    timings: bool,
}

fn verify_config(v: VerifyArgs) -> Result<RunConfig, Error> {
    let mut tolerances = Tolerances::default();
    if let Some(t) = v.tol {
        tolerances.tol_residual = t;
    }
    if let Some(t) = v.tol_exact {
        tolerances.tol_exact = t;
    }
    if let Some(t) = v.tol_rank {
        tolerances.tol_rank = t;
    }
    if let Some(d) = v.delta_pole {
        tolerances.delta_pole = d;
    }
    if let Some(n) = v.nodes {
        if n < 4 {
            return Err(Error::Usage("--nodes must be at least 4".into()));
        }
        tolerances.nodes = n;
        tolerances.max_nodes = tolerances.max_nodes.max(n);
    }
    Ok(RunConfig {
        algebra: Some(v.algebra),
        omega: v.omega.as_deref().map(OmegaSpec::parse).transpose()?,
        method: v.method.parse::<Method>()?,
        tolerances,
        output: v.output.parse()?,
        suites: Suite::parse_list(&v.suites)?,
        seed: v.seed,
        max_order: v.max_order,
        timings: v.timings,
    })
}

fn execute(command: Command) -> Result<i32, Error> {
    let config = match command {
        Command::Catalog => {
            print!("{}", cli::catalog_list());
            return Ok(0);
        }
        Command::Verify(v) => verify_config(v)?,
        Command::Identities { max_order, seed, output } => RunConfig {
            output: output.parse::<OutputFormat>()?,
            suites: vec![Suite::Identities, Suite::Uniqueness],
            seed,
            max_order,
            ..RunConfig::default()
        },
        Command::Validate { algebra, output } => RunConfig {
            algebra: Some(algebra),
            output: output.parse()?,
            suites: vec![Suite::Validate],
            ..RunConfig::default()
        },
    };
    let report = cli::run(&config)?;
    print!("{}", report.render());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match execute(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dynr: {e}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use superlie_cli::{execute, AlgebraSpec, CliError, Command, RunConfig, Sampled, DEFAULT_DEGREE_CAP};
use superlie::TorusElement;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Build,
    CheckJacobi,
    Casimir,
    HopfCheck,
    JstructCheck,
    GammaCheck,
    Radial,
    Complexify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Build => Command::Build,
            Cmd::CheckJacobi => Command::CheckJacobi,
            Cmd::Casimir => Command::Casimir,
            Cmd::HopfCheck => Command::HopfCheck,
            Cmd::JstructCheck => Command::JstructCheck,
            Cmd::GammaCheck => Command::GammaCheck,
            Cmd::Radial => Command::Radial,
            Cmd::Complexify => Command::Complexify,
        }
    }
}

/// Exact verification suites for Lie superalgebras and their smash-product Hopf superalgebras.
#[derive(Debug, Parser)]
#[command(name = "superlie", version)]
struct Args {
    command: Cmd,
    /// Builder spec: gl:m,n or realgl:m,n
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    algebra: Option<String>,
    /// Algebra-definition JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "SUPERLIE_DEGREE_CAP", default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Number of random torus points, or a JSON list of points
    #[arg(long, default_value = "20")]
    points: String,
    /// Number of random weights, or a JSON list of integer weights
    #[arg(long, default_value = "12")]
    weights: String,
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long)]
    check_central: bool,
    /// Comma-separated generator names spanning the ideal
    #[arg(long, value_delimiter = ',')]
    ideal: Vec<String>,
    /// Include the algebra definition in the build report
    #[arg(long)]
    dump: bool,
    /// Report path; standard output if omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

fn config(args: Args) -> Result<RunConfig, CliError> {
    let algebra = match (args.algebra, args.file) {
        (_, Some(path)) => AlgebraSpec::File(path),
        (Some(spec), None) => spec.parse()?,
        (None, None) => unreachable!("clap requires one of --algebra/--file"),
    };
    let mut c = RunConfig::new(args.command.into(), algebra);
    c.samples = args.samples;
    c.seed = args.seed;
    c.degree_cap = args.degree_cap;
    c.points = args.points.parse::<Sampled<TorusElement>>()?;
    c.weights = args.weights.parse::<Sampled<Vec<i32>>>()?;
    c.order = args.order;
    c.check_central = args.check_central;
    c.ideal = args.ideal;
    c.dump = args.dump;
    c.output = args.output;
    Ok(c)
}

fn main() -> ExitCode {
    let result = config(Args::parse()).and_then(|c| execute(&c));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("superlie: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

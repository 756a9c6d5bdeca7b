use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use located_cli::run::EXIT_USAGE;
use located_cli::{parse_config, run, Command, Options};

/// Certified distances, points and nets for overt closed subspaces of
/// metric completions.
#[derive(Parser, Debug)]
#[command(name = "located", version)]
struct Cli {
    /// Space and oracle configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Tolerance exponent: results are accurate to 2^-EXP.
    #[arg(long, global = true, value_name = "EXP")]
    tol: Option<u32>,
    /// Validator seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fractional digits in decimal renderings.
    #[arg(long, global = true, value_name = "N", default_value_t = 12)]
    digits: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Falsification checks for the oracle's axioms.
    Validate,
    /// Bracket the distance from X to the closed set.
    Distance {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Extract a point from a positive ball, e.g. `B(1/2;2)`.
    Point {
        #[arg(allow_hyphen_values = true)]
        ball: String,
    },
    /// Compute an EPS-net of the closed set.
    Net { eps: String },
    /// Look for a ball around X missing the closed set.
    Complement {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Certify that ball A is covered by the balls U.
    Cover {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(required = true, allow_hyphen_values = true)]
        u: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(config_path) = cli.config else {
        eprintln!("error: --config PATH is required");
        return ExitCode::from(EXIT_USAGE as u8);
    };
    let text = match std::fs::read_to_string(&config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", config_path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    if let Some(tol) = cli.tol {
        if tol == 0 {
            eprintln!("error: --tol must be at least 1");
            return ExitCode::from(EXIT_USAGE as u8);
        }
        config.tol_exp = tol;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let command = match cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::Distance { x } => Command::Distance(x),
        Cmd::Point { ball } => Command::Point(ball),
        Cmd::Net { eps } => Command::Net(eps),
        Cmd::Complement { x } => Command::Complement(x),
        Cmd::Cover { a, u } => Command::Cover { ball: a, family: u },
    };
    let base_dir = config_path.parent().map(PathBuf::from).unwrap_or_default();
    let outcome = run(
        &command,
        &config,
        &base_dir,
        &Options {
            json: cli.json,
            digits: cli.digits,
        },
    );
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.code as u8)
}

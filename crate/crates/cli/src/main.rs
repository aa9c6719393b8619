//! `toricarc`: resolutions, essential divisors, McKay classes, valuations,
//! arc divisoriality and saturations from JSON input.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use io::{read_source, render_json, render_table, CliResult};

#[derive(Parser)]
#[command(name = "toricarc", version, about = "Exact toric computations from JSON input")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Common {
    /// Input file, or `-` for stdin.
    input: Option<PathBuf>,
    /// Inline JSON input instead of a file.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a fan (or a single cone) by star subdivisions.
    Resolve {
        #[command(flatten)]
        common: Common,
        /// Comma-separated ray the resolution must not introduce.
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Essential divisors of a cone.
    Essential {
        #[command(flatten)]
        common: Common,
    },
    /// Nash components of a pretoric variety given by marked faces.
    Nash {
        #[command(flatten)]
        common: Common,
    },
    /// Age classes of a diagonal abelian group action.
    Mckay {
        #[command(flatten)]
        common: Common,
        /// Keep only the classes of age one (requires a subgroup of SL).
        #[arg(long)]
        sl_age1: bool,
        /// Compare the essential divisor count with the junior class count.
        #[arg(long)]
        bound_check: bool,
    },
    /// Monomial valuation of a Laurent polynomial.
    Valuate {
        #[command(flatten)]
        common: Common,
    },
    /// Divisoriality test for a symbolic arc.
    ArcCheck {
        #[command(flatten)]
        common: Common,
        /// Working precision for exact coordinates.
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Saturation and pretoric lattice of an affine semigroup.
    Saturate {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Resolve { common, .. }
            | Command::Essential { common }
            | Command::Nash { common }
            | Command::Mckay { common, .. }
            | Command::Valuate { common }
            | Command::ArcCheck { common, .. }
            | Command::Saturate { common } => common,
        }
    }
}

fn run(cmd: &Command) -> CliResult<commands::Report> {
    let common = cmd.common();
    let text = read_source(common.input.as_deref(), common.inline.as_deref())?;
    match cmd {
        Command::Resolve { avoid, .. } => commands::resolve(&text, avoid.as_deref()),
        Command::Essential { .. } => commands::essential(&text),
        Command::Nash { .. } => commands::nash(&text),
        Command::Mckay { sl_age1, bound_check, .. } => commands::mckay(&text, *sl_age1, *bound_check),
        Command::Valuate { .. } => commands::valuate(&text),
        Command::ArcCheck { truncation, .. } => commands::arc_check(&text, common.seed, *truncation),
        Command::Saturate { .. } => commands::saturate(&text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    match run(&cli.command) {
        Ok(report) => {
            let mut body = serde_json::Map::new();
            body.insert("seed".into(), Value::from(common.seed));
            body.extend(report.body);
            let body = Value::Object(body);
            match common.format {
                Format::Json => print!("{}", render_json(&body)),
                Format::Table => print!("{}", render_table(&body)),
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("toricarc: {e}");
            eprintln!("seed: {}", common.seed);
            ExitCode::from(e.exit_code())
        }
    }
}

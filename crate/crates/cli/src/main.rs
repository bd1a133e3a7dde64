//! `bentkit`: analyze Boolean functions, generate bent families, verify the
//! dual and pseudo-dual identities and replay the reference fixtures.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Failure;

#[derive(Parser)]
#[command(
    name = "bentkit",
    version,
    about = "Bent functions from near-bent functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight, degree, spectrum class, conditions and trace form of a function.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Also run every applicable identity check.
        #[arg(long)]
        checks: bool,
        /// Include the full Walsh coefficient array in JSON output.
        #[arg(long)]
        spectrum: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a bent function from one of the near-bent families.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// F, its dual, both pseudo-duals and their duals, from a near-bent f0.
    Sixpack {
        #[command(flatten)]
        input: InputArgs,
        /// Replace f0 by the member of {f0, f0+1, f0+tr, f0+tr+1} with
        /// D_1 = 0 and value 0 at 0.
        #[arg(long)]
        normalize: bool,
        /// Directory for the six truth-table files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every applicable identity check on a bent function.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replay the reference fixtures and compare with their listings.
    Examples {
        /// Alter the first expectation of one fixture.
        #[arg(long, hide = true, value_name = "ID")]
        corrupt: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum Family {
    /// tr(x^d) with d = 4^s - 2^s + 1.
    KasamiWelch {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        common: GenerateArgs,
    },
    /// Sum of tr(x^(2^j+1)) over j in J.
    Quadratic {
        #[arg(long)]
        t: u32,
        #[arg(
            long = "J",
            value_delimiter = ',',
            required = true,
            value_name = "j1,j2,..."
        )]
        js: Vec<u32>,
        #[command(flatten)]
        common: GenerateArgs,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// Primitive polynomial of GF(2^(2t-1)), e.g. 0x83.
    #[arg(long)]
    poly: Option<String>,
    /// Truth-table file to write; defaults to a name built from the
    /// parameters in the current directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[group(skip)]
pub struct InputArgs {
    /// Number of variables.
    #[arg(long)]
    dim: Option<u32>,
    /// Primitive polynomial of the field, e.g. 0x83.
    #[arg(long)]
    poly: Option<String>,
    /// Trace expression for a function on GF(2^dim).
    #[arg(long, required_unless_present_any = ["expr_pair", "table"], conflicts_with_all = ["expr_pair", "table"])]
    expr: Option<String>,
    /// Components f0 and f1 of a function in dim variables; a second
    /// argument of the form `+expr` means f1 = f0 + expr.
    #[arg(long, num_args = 2, value_names = ["F0", "F1"], conflicts_with = "table")]
    expr_pair: Option<Vec<String>>,
    /// Truth-table file (`BF m=<dim>` header, then hex).
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
pub struct OutputArgs {
    /// Machine-readable output with sorted keys.
    #[arg(long)]
    json: bool,
    /// Add a generation timestamp to JSON output.
    #[arg(long)]
    timestamps: bool,
}

fn run(cli: Cli) -> Result<report::Report, Failure> {
    match cli.command {
        Command::Analyze {
            input,
            checks,
            spectrum,
            output,
        } => commands::analyze(&input, checks, spectrum).map(|r| r.with(output)),
        Command::Generate { family } => match family {
            Family::KasamiWelch { t, s, common } => {
                commands::generate_kasami_welch(t, s, common.poly.as_deref(), common.out)
                    .map(|r| r.with(common.output))
            }
            Family::Quadratic { t, js, common } => {
                commands::generate_quadratic(t, &js, common.poly.as_deref(), common.out)
                    .map(|r| r.with(common.output))
            }
        },
        Command::Sixpack {
            input,
            normalize,
            out,
            output,
        } => commands::sixpack(&input, normalize, out).map(|r| r.with(output)),
        Command::Verify { input, output } => commands::verify(&input).map(|r| r.with(output)),
        Command::Examples { corrupt, output } => {
            commands::examples(corrupt.as_deref()).map(|r| r.with(output))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => report.emit(),
        Err(failure) => failure.exit(),
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polysew_cli::bench::cmd_bench;
use polysew_cli::commands::{cmd_gen_cyclic, cmd_sew, cmd_towers, cmd_verify, SewOpts, VerifyOpts};
use polysew_cli::pipeline::cmd_pipeline;
use polysew_cli::CliResult;

#[derive(Parser)]
#[command(
    name = "polysew",
    version,
    about = "Build and check even-dimensional neighbourly polytopes by sewing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the cyclic polytope C(n, d)
    GenCyclic {
        /// Number of vertices
        n: usize,
        /// Dimension
        d: usize,
        /// Output file (.json, or .txt/.facets for the text format)
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Validate a polytope file and optionally check extra properties
    Verify {
        path: PathBuf,
        /// Check that every floor(d/2)-subset of vertices is a face
        #[arg(long)]
        neighbourly: bool,
        /// Compare the facet count against the neighbourly formula
        #[arg(long)]
        facet_formula: bool,
        /// Enumerate universal faces per odd dimension (brute force)
        #[arg(long)]
        universal_dims: bool,
    },
    /// Sew a new vertex onto a polytope through a universal tower
    Sew {
        path: PathBuf,
        /// Tower as vertex-label pairs, e.g. 0:1,2:3
        #[arg(long)]
        tower: String,
        /// Label for the new vertex (default: first unused s1, s2, ..)
        #[arg(long)]
        label: Option<String>,
        /// Output file
        #[arg(short, long)]
        out: PathBuf,
        /// Cross-check the recursion against the beyond-beneath oracle
        #[arg(long)]
        oracle_check: bool,
        /// Also compute the universal-face catalog and write a sidecar
        #[arg(long)]
        track_universal: bool,
    },
    /// List universal towers of a polytope
    Towers {
        path: PathBuf,
        /// Maximum number of towers to list (0 = unlimited)
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Run a pipeline script (gen / sew / sew-auto / verify / report)
    Pipeline {
        script: PathBuf,
        /// Write the last polytope defined by the script here
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Repeatedly sew in dimension 4 and report per-facet cost
    Bench {
        /// Start from C(start_n, 4)
        start_n: usize,
        /// Stop once this many vertices are reached
        end_n: usize,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::GenCyclic { n, d, out } => cmd_gen_cyclic(n, d, &out),
        Command::Verify {
            path,
            neighbourly,
            facet_formula,
            universal_dims,
        } => cmd_verify(
            &path,
            VerifyOpts {
                neighbourly,
                facet_formula,
                universal_dims,
            },
        ),
        Command::Sew {
            path,
            tower,
            label,
            out,
            oracle_check,
            track_universal,
        } => cmd_sew(
            &path,
            &tower,
            label,
            &out,
            SewOpts {
                oracle_check,
                track_universal,
            },
        ),
        Command::Towers { path, limit } => cmd_towers(&path, limit),
        Command::Pipeline { script, out } => cmd_pipeline(&script, out.as_deref()),
        Command::Bench { start_n, end_n } => cmd_bench(start_n, end_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

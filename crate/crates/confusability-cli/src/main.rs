use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use confusability_cli::commands::{
    cmd_estimate, cmd_graph, cmd_verify, CommandOutput, OutputFormat,
};
use confusability_cli::scene::SceneFile;
use confusability_cli::CliError;

#[derive(Parser)]
#[command(
    name = "confusability",
    version,
    about = "Confusability graphs, verification checks, and covariant estimation for finite-group orbit scenes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the scene's confusability graph.
    Graph {
        /// Path to a JSON scene file.
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        /// Override the scene's tolerance eps.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run verification checks and print a JSON report.
    Verify {
        /// Path to a JSON scene file.
        #[arg(long)]
        scene: PathBuf,
        /// Comma-separated subset of prop1,prop2,deco,dfs,reduce.
        /// Defaults to every check the scene has inputs for.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Random trials per component subspace in the dfs check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the dfs check's random trials; echoed in the report.
        #[arg(long, default_value_t = 7)]
        rng_seed: u64,
        /// Override the scene's tolerance eps.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate the covariant-POVM cost functional.
    Estimate {
        /// Path to a JSON scene file.
        #[arg(long)]
        scene: PathBuf,
        /// Override the scene's tolerance eps.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Dot => OutputFormat::Dot,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn dispatch(cli: Cli) -> Result<CommandOutput, CliError> {
    match cli.command {
        Command::Graph { scene, format, tol } => {
            let loaded = SceneFile::read(&scene)?.realize(tol)?;
            cmd_graph(&loaded, format.into())
        }
        Command::Verify {
            scene,
            checks,
            trials,
            rng_seed,
            tol,
        } => {
            let loaded = SceneFile::read(&scene)?.realize(tol)?;
            cmd_verify(&loaded, checks.as_deref(), trials, rng_seed)
        }
        Command::Estimate { scene, tol } => {
            let loaded = SceneFile::read(&scene)?.realize(tol)?;
            cmd_estimate(&loaded)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

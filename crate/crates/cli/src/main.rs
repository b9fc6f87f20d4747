use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "abelian", version, about = "Decompose finite Abelian groups into cyclic factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of a matrix file (`-` reads stdin).
    Snf { matrix: String },
    /// Decompose `znstar:N`, `classgroup:D` or `cyclic:m1,m2,...`.
    Decompose {
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "margin-c", default_value_t = 3)]
        margin_c: u64,
        #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
        capacity: u64,
        #[arg(long, default_value_t = 5)]
        retries: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Check a structured decomposition file against a group.
    Verify { group: String, decomposition: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Snf { matrix } => commands::cmd_snf(&matrix),
        Command::Decompose {
            group,
            seed,
            margin_c,
            capacity,
            retries,
            format,
        } => {
            let config = RunConfig {
                seed,
                margin_c,
                capacity: usize::try_from(capacity).unwrap_or(usize::MAX),
                retries,
                format,
            };
            commands::cmd_decompose(&group, &config)
        }
        Command::Verify {
            group,
            decomposition,
        } => commands::cmd_verify(&group, &decomposition),
    };
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(CliError { code, stdout, message }) => {
            print!("{stdout}");
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

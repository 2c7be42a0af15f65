use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stratsym::runner::{exit_code, run, Command, RunConfig};
use stratsym::Error;

#[derive(Parser)]
#[command(name = "stratsym", version, about = "Symmetry, invariant-solution and energy checks for the rotating stratified Boussinesq system")]
struct Cli {
    /// JSON run configuration; omitted fields take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the configured output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Determining-equation residuals of the generator catalog on seeded jets.
    VerifySymmetries,
    /// Integrate the reduced equation and sample the invariant solution.
    Solve,
    /// Residual, convergence and invariance checks of the invariant solution.
    VerifySolution,
    /// Disk energy conservation and closed-form audit.
    Energy,
    /// Commutators of the generator catalog.
    BracketTable,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::VerifySymmetries => Command::VerifySymmetries,
            Cmd::Solve => Command::Solve,
            Cmd::VerifySolution => Command::VerifySolution,
            Cmd::Energy => Command::Energy,
            Cmd::BracketTable => Command::BracketTable,
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, Error> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out = out.clone();
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if cli.print_config {
        return match config.to_json() {
            Ok(s) => {
                let _ = std::io::stdout().lock().write_all(s.as_bytes());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(1);
    };
    let command = Command::from(cmd);
    let result = run(command, &config);
    let code = exit_code(&result);
    match &result {
        Ok(o) => {
            // A closed stdout must not turn a finished run into a panic.
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}: {:?}: {}", command.name(), o.status, o.summary);
            let _ = writeln!(stdout, "  wrote {} file(s) under {}", o.files.len(), config.out.display());
        }
        Err(e) => eprintln!("{}: error: {e}", command.name()),
    }
    ExitCode::from(code as u8)
}

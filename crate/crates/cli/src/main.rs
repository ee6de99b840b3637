use std::fmt;
use std::process::ExitCode;

use clap::Parser;

mod appendix;
mod args;
mod output;
mod spectrum;
mod transform;
mod verify;
mod wavefunction;

use args::{Cli, Command};

/// A usage or parse error detected after clap has accepted the arguments.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Whether the command's checks (if any) all held.
pub enum Status {
    Ok,
    Failed,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Spectrum(a) => spectrum::run(&a),
        Command::Wavefunction(a) => wavefunction::run(&a),
        Command::Transform(a) => transform::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Appendix(a) => appendix::run(&a.which),
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use circulant_cli::commands::Status;
use circulant_cli::output::write_records;
use circulant_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::Usage.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = run(&cli);
    let written = match &cli.out {
        Some(path) => File::create(path)
            .map_err(Into::into)
            .and_then(|f| write_records(BufWriter::new(f), &outcome.records, cli.format)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_records(&mut lock, &outcome.records, cli.format).and_then(|()| Ok(lock.flush()?))
        }
    };
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    if let Err(e) = written {
        eprintln!("error writing output: {e}");
        return ExitCode::from(Status::Inconsistent.code() as u8);
    }
    ExitCode::from(outcome.status.code() as u8)
}

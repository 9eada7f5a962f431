use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polylog_dist::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = out.write_all(report.table.render(cli.format).as_bytes());
            let _ = out.flush();
            for msg in &report.messages {
                eprintln!("{msg}");
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use bellbox_cli::{run, RunError};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok((report, format)) => {
            let stdout = std::io::stdout();
            if let Err(e) = report.write_to(format, stdout.lock()) {
                eprintln!("bellbox: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            match e {
                RunError::Clap(c) => {
                    let _ = c.print();
                }
                RunError::Cli(c) => {
                    let _ = writeln!(std::io::stderr(), "bellbox: {c}");
                }
            }
            ExitCode::from(code as u8)
        }
    }
}

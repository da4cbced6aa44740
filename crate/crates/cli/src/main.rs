use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use khoval_cli::{commands::exit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(cli);
    if !out.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.stdout.trim_end());
    }
    if !out.stderr.is_empty() {
        eprintln!("khoval: {}", out.stderr);
    }
    ExitCode::from(out.code)
}

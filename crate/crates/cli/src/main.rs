use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = spex_cli::run(std::env::args_os(), &mut io::stdin().lock());
    // a closed pipe downstream is not worth a panic
    let _ = io::stdout().write_all(exec.stdout.as_bytes());
    let _ = io::stderr().write_all(exec.stderr.as_bytes());
    ExitCode::from(exec.code as u8)
}

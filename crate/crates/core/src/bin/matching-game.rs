use std::io::{self, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    let needs_stdin = matching_game::cli::reads_stdin(&args);
    if needs_stdin {
        if let Err(e) = io::stdin().read_to_string(&mut stdin) {
            eprintln!("error: reading standard input: {e}");
            return ExitCode::from(2);
        }
    }
    let out = matching_game::cli::run(&args, &stdin);
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}

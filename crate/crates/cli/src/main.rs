use std::io::Write;
use std::panic;
use std::process::ExitCode;

use zetakit::exec::configure_threads;
use zetakit::Execution;
use zetakit_cli::{run, threads_from_env, EXIT_MATH, EXIT_USAGE, THREADS_ENV};

fn main() -> ExitCode {
    let env = std::env::var(THREADS_ENV).ok();
    let exec = match threads_from_env(env.as_deref()) {
        Ok(Some(1)) => Execution::Sequential,
        Ok(Some(n)) => {
            configure_threads(n);
            Execution::default()
        }
        Ok(None) => Execution::default(),
        Err(m) => {
            eprintln!("zetakit: usage error: {m}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let args: Vec<String> = std::env::args().collect();
    // last line of defence: a panic is reported as a math failure
    panic::set_hook(Box::new(|info| eprintln!("zetakit: internal error: {info}")));
    let outcome = match panic::catch_unwind(|| run(args, exec)) {
        Ok(o) => o,
        Err(_) => return ExitCode::from(EXIT_MATH as u8),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}

//! The `polyhull` command line tool: instance generators, representation
//! conversion, lattice point enumeration and a benchmark harness, all
//! speaking the `.poly` text format on files or stdin/stdout.
//!
//! Exit codes: 0 on success, 1 on domain errors (unbounded or empty input
//! where the operation needs otherwise, enumeration cap exceeded), 2 on
//! usage errors (bad flags, malformed input files).

use clap::Parser;

pub mod args;
pub mod bench;
mod exec;

/// How a command failed, deciding the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or malformed input: exit code 2.
    Usage(String),
    /// A well-formed problem whose answer is a refusal: exit code 1.
    Domain(String),
}

pub fn run_main() -> i32 {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match exec::dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

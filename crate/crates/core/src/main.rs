use std::process::ExitCode;

use graceful::cli::{run_from_args, Status};

fn main() -> ExitCode {
    let outcome = run_from_args(std::env::args_os());
    if outcome.status == Status::Usage {
        eprint!("{}", outcome.document);
    } else {
        print!("{}", outcome.document);
    }
    ExitCode::from(outcome.status.code() as u8)
}

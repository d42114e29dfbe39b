use std::process::ExitCode;

fn main() -> ExitCode {
    ptakkit::cli::run(std::env::args_os())
}

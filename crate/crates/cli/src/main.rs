use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(m0n_cli::run(std::env::args_os()))
}

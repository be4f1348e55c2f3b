use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(noma_accuracy::cli::main_with(std::env::args_os()))
}

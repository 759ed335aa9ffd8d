use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fuchsian::cli::run(std::env::args_os()))
}

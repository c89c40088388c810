use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(centerfocus::cli::main_entry())
}

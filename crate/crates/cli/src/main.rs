use std::process::ExitCode;

fn main() -> ExitCode {
    binomdiv::run(std::env::args_os())
}

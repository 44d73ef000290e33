use std::process::ExitCode;

fn main() -> ExitCode {
    tmoments::cli::main()
}

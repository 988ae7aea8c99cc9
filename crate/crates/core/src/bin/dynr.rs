use std::io::Write;

fn main() {
    let outcome = dynr::cli::run(std::env::args_os());
    let text = outcome.output;
    if outcome.exit_code == dynr::cli::EXIT_PASS || outcome.exit_code == dynr::cli::EXIT_CHECK_FAILED {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    std::process::exit(outcome.exit_code);
}

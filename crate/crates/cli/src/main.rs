use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = framecurv_cli::run(std::env::args_os());
    for note in &outcome.notes {
        eprintln!("{}", note.trim_end());
    }
    println!("{}", outcome.report.trim_end());
    ExitCode::from(outcome.code as u8)
}

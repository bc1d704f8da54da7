use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = conclusive::cli::run(std::env::args_os().skip(1));
    if outcome.exit_code == 0 {
        print!("{}", outcome.report);
        if !outcome.report.ends_with('\n') {
            println!();
        }
    } else {
        eprint!("{}", outcome.report);
        if !outcome.report.ends_with('\n') {
            eprintln!();
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}

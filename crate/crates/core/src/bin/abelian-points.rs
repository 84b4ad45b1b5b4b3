use std::io::Write;

fn main() {
    let outcome = abelian_points::cli::run(std::env::args_os());
    let _ = writeln!(std::io::stdout(), "{}", outcome.output);
    std::process::exit(outcome.code);
}

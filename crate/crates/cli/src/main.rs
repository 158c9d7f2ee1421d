use clap::Parser;
use omega_cli::{execute, Invocation};

fn main() {
    let inv = Invocation::parse();
    let code = execute(
        &inv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
    .unwrap_or_else(|e| {
        eprintln!("error: {e}");
        1
    });
    std::process::exit(code);
}

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = subdiv_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    // Output is only written once the command has finished, so a failing
    // run never leaves half a certificate on stdout.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}

use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let mut stdout = BufWriter::new(io::stdout());
    let mut stderr = io::stderr();
    let code = skolemgen_cli::run(
        std::env::args_os(),
        &mut skolemgen_cli::Io {
            stdin: &mut stdin,
            stdout: &mut stdout,
            stderr: &mut stderr,
        },
    );
    if std::io::Write::flush(&mut stdout).is_err() && code == 0 {
        return ExitCode::from(skolemgen_cli::exit::IO);
    }
    ExitCode::from(code)
}

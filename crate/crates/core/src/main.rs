use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = causord::cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut out,
        &mut io::stderr(),
    );
    let _ = out.flush();
    ExitCode::from(code as u8)
}

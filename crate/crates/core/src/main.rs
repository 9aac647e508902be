use std::io::IsTerminal;

fn main() {
    let stdin = std::io::stdin();
    let mut stdin = stdin.lock();
    let stdout = std::io::stdout();
    let stdout_is_terminal = stdout.is_terminal();
    let mut stdout = std::io::BufWriter::new(stdout.lock());
    let mut stderr = std::io::stderr();
    let code = palgraph::cli::run(
        std::env::args_os(),
        &mut palgraph::cli::Io {
            stdin: &mut stdin,
            stdout: &mut stdout,
            stderr: &mut stderr,
            stdout_is_terminal,
        },
    );
    use std::io::Write;
    let _ = stdout.flush();
    std::process::exit(code);
}

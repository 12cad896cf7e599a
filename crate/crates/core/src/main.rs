use std::io::Write;

fn main() {
    let mut out = String::new();
    let code = oddakh::cli::run(std::env::args(), &mut out);
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}

use std::io::Write;

fn main() {
    let (out, code) = nambu::cli::run_from_args(std::env::args_os());
    let mut stdout = std::io::stdout();
    if code == 2 && !out.starts_with("command:") && !out.starts_with('{') {
        eprint!("{out}");
    } else {
        let _ = stdout.write_all(out.as_bytes());
    }
    let _ = stdout.flush();
    std::process::exit(code);
}

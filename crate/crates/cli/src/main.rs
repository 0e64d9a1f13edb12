use std::io::Write;

fn main() {
    let (code, out, err) = quadlie_cli::run_args(std::env::args_os());
    std::io::stdout().write_all(out.as_bytes()).ok();
    std::io::stderr().write_all(err.as_bytes()).ok();
    std::process::exit(code);
}

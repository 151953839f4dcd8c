use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = pvi_cli::run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}

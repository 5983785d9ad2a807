use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cap = std::env::var(orbispace_cli::CAP_ENV).ok();
    let out = orbispace_cli::run(&args, &mut std::io::stdin().lock(), cap.as_deref());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}

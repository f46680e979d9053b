use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let verbose = args.iter().any(|a| a == "--verbose" || a == "-v");
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if verbose {
        "info"
    } else {
        "warn"
    }))
    .target(env_logger::Target::Stderr)
    .init();

    let out = braidimg_cli::run_args(args);
    print!("{}", out.stdout);
    std::io::stdout().flush().ok();
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}

fn main() {
    let filter = std::env::var("NIGPART_LOG").unwrap_or_else(|_| "warn".into());
    env_logger::Builder::new().parse_filters(&filter).init();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = nigpart::cli::run(std::env::args_os(), &mut stdout, &mut stderr);
    std::process::exit(code);
}

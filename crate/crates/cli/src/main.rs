fn main() {
    let config = match netparity_cli::parse_args(std::env::args_os()) {
        Ok(config) => config,
        // Prints help/usage and exits: 0 for --help/--version, 2 for
        // usage errors.
        Err(e) => e.exit(),
    };
    if let Err(e) = netparity_cli::execute(&config) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn main() {
    std::process::exit(ctcsim::cli::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(sparselim::cli::run(std::env::args_os()));
}

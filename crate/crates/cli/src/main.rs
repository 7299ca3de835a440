fn main() {
    std::process::exit(carousel_cli::cli::run(std::env::args_os()));
}

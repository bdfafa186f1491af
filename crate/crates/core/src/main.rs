fn main() {
    std::process::exit(cbpp::cli::run(std::env::args_os()));
}

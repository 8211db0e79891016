fn main() {
    std::process::exit(mcsl::cli::run(std::env::args_os()));
}

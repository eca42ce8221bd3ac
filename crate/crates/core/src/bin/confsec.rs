fn main() {
    std::process::exit(confsec::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(dyadic_cli::run(std::env::args_os()));
}

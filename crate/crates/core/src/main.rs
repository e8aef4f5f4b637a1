fn main() {
    std::process::exit(rheolab::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(bingham::cli::run(std::env::args_os()));
}

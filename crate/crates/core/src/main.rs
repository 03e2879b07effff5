fn main() {
    std::process::exit(propmod::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(trifold::cli::run(std::env::args_os()));
}

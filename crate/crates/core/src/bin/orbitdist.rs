fn main() {
    std::process::exit(orbitdist::cli::run(std::env::args_os()));
}

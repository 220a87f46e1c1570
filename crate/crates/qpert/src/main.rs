fn main() {
    std::process::exit(qpert::cli::run(std::env::args().skip(1)));
}

fn main() {
    std::process::exit(geocurve::cli::run(std::env::args_os()));
}

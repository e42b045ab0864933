fn main() {
    std::process::exit(riccati::cli::run());
}

fn main() {
    std::process::exit(qmw::cli::run());
}

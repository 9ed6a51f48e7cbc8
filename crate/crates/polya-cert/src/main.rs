fn main() {
    std::process::exit(polya_cert::cli::run());
}

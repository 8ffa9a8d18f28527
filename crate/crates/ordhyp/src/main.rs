fn main() {
    std::process::exit(ordhyp::cli::run());
}

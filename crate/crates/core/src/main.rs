fn main() {
    std::process::exit(cavity_squeeze::cli::run());
}

fn main() {
    std::process::exit(mediankit::cli::main());
}

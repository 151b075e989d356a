fn main() {
    std::process::exit(polyhull_cli::run_main());
}

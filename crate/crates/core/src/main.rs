fn main() {
    std::process::exit(nlfkpp::cli::main_with_args(
        std::env::args().skip(1).collect(),
    ));
}

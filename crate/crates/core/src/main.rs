fn main() {
    std::process::exit(cbfact::cli::run(std::env::args()));
}

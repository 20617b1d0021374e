fn main() {
    std::process::exit(cayley_cliques::cli::run(std::env::args_os()));
}

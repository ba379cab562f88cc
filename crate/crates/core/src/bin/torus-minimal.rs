fn main() {
    std::process::exit(torus_minimal::cli::main_with_args(std::env::args_os()));
}

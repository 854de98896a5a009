fn main() {
    std::process::exit(hyperdual::cli::main_with_args(std::env::args_os()));
}

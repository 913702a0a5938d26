fn main() {
    std::process::exit(unf_cli::main_with_args(std::env::args_os()));
}

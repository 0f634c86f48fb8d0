fn main() {
    std::process::exit(spherinder::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(wszeged::cli::main_with_args(std::env::args_os()));
}

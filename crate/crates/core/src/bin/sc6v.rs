fn main() {
    std::process::exit(sc6v::cli::main_with_args(std::env::args_os()));
}

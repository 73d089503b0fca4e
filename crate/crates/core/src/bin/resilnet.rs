fn main() {
    std::process::exit(resilnet::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(rotovac::cli::main_with_args(std::env::args_os()));
}

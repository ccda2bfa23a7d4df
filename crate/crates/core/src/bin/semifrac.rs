fn main() {
    std::process::exit(semifrac::cli::main_with(std::env::args_os()));
}

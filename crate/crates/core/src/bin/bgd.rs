fn main() {
    std::process::exit(bialgebroid::cli::main_with(std::env::args_os()));
}

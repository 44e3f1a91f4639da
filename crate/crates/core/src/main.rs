fn main() {
    std::process::exit(polylab::cli::main_with_env());
}

fn main() {
    std::process::exit(structeig::cli::main_exit_code());
}

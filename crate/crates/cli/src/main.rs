fn main() {
    std::process::exit(cqregion_cli::run(std::env::args_os()));
}

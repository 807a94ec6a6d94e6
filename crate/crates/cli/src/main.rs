fn main() {
    std::process::exit(holext_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(adderkit_cli::run(std::env::args_os()));
}

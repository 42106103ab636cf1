fn main() {
    std::process::exit(fmsched_cli::run(std::env::args_os()));
}

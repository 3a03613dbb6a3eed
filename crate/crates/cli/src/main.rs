fn main() {
    std::process::exit(fsr_cli::run(std::env::args_os()));
}

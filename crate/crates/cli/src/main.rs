fn main() {
    std::process::exit(skylink_cli::cli::run(std::env::args_os()));
}

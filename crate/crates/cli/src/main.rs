fn main() {
    std::process::exit(sociokit_cli::run(std::env::args_os()));
}

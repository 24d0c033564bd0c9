fn main() {
    std::process::exit(udisc_cli::run(std::env::args_os()));
}

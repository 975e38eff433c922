fn main() {
    std::process::exit(snowteam::cli::run_cli(std::env::args_os()));
}

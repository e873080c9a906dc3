fn main() {
    std::process::exit(jjdirac_cli::run_cli(std::env::args_os()));
}

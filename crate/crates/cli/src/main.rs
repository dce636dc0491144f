fn main() {
    std::process::exit(stacklab_cli::run(std::env::args_os()));
}

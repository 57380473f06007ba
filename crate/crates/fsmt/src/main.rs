fn main() {
    std::process::exit(fsmt::cli::run(std::env::args_os()));
}

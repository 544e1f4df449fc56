fn main() {
    std::process::exit(walsh_lab::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(diffembed::cli::run(std::env::args_os()));
}

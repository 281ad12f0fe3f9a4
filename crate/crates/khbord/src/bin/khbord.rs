fn main() {
    std::process::exit(khbord::cli::run(std::env::args_os()));
}

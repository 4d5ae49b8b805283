fn main() {
    std::process::exit(deflatrix::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(it2bayes::cli::run(std::env::args_os()));
}

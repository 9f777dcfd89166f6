fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(trace42::cli::run(&args));
}

fn main() {
    std::process::exit(iquantum::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(cover_persist::cli::run(std::env::args_os()));
}

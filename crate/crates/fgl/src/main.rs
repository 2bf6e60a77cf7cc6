fn main() {
    std::process::exit(fgl::cli::run());
}

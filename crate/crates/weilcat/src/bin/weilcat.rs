fn main() {
    std::process::exit(weilcat::cli::run());
}

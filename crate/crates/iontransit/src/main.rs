fn main() {
    std::process::exit(iontransit::cli::run());
}

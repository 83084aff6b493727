fn main() {
    std::process::exit(pdesolve::cli::run());
}

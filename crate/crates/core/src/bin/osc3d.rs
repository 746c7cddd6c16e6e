fn main() {
    std::process::exit(osc3d::cli::main());
}

fn main() {
    std::process::exit(steer_recon::cli::main());
}

fn main() {
    std::process::exit(beamkit::harness::cli::run(std::env::args_os()) as i32);
}

fn main() {
    std::process::exit(paired_egress::cli::run(std::env::args_os()));
}

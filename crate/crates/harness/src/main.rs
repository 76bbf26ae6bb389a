fn main() {
    std::process::exit(srgbm_harness::cli::main_with_args(std::env::args_os()));
}

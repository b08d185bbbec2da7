fn main() {
    std::process::exit(hermitian_lfun::cli::run_from_env());
}

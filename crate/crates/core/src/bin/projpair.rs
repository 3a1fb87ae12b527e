fn main() {
    std::process::exit(projpair::cli::main_with_args(std::env::args_os()));
}

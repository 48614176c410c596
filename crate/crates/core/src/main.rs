fn main() {
    std::process::exit(abjad::cli::main_with_args(std::env::args_os()));
}

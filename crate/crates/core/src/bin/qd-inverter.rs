fn main() {
    std::process::exit(qd_inverter::cli::main_with_args(std::env::args_os()));
}

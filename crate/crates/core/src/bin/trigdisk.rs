fn main() {
    std::process::exit(trigdisk::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(gimlab::runner::cli_main(std::env::args_os()));
}

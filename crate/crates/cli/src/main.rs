fn main() {
    std::process::exit(crn_realize::cli_main(std::env::args_os()));
}

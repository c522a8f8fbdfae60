fn main() {
    let outcome = netarith::cli::run_command(std::env::args_os());
    print!("{}", outcome.output);
    std::process::exit(outcome.code);
}

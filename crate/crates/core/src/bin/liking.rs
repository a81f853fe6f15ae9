fn main() {
    let out = liking::cli::run(std::env::args_os());
    print!("{}", out.rendered);
    std::process::exit(out.exit_code);
}

fn main() {
    let out = uamo::cli::run_from(std::env::args_os());
    if out.code == uamo::cli::EXIT_OK {
        print!("{}", out.stdout);
    } else {
        eprintln!("{}", out.stdout);
    }
    std::process::exit(out.code);
}

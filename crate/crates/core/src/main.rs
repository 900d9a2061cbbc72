fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out) = equidiv::cli::run(&argv);
    print!("{out}");
    std::process::exit(code);
}

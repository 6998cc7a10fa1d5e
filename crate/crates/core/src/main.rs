fn main() {
    let code = bicomplex_lab::clio::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}

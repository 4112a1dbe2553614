fn main() {
    let out = quiver_sod::cli::main_with_args(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}

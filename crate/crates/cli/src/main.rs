fn main() {
    std::process::exit(scc_lab::run(std::env::args_os()));
}

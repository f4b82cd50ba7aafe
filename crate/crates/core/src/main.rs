fn main() {
    std::process::exit(classica::interface::dispatch(std::env::args_os()));
}

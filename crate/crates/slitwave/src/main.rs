fn main() {
    std::process::exit(slitwave::cli::main_entry());
}

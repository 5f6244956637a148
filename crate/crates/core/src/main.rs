fn main() {
    std::process::exit(perc_duality::cli::run());
}

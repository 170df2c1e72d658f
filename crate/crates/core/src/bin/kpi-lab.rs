fn main() {
    std::process::exit(kpi_lab::cli::run());
}

fn main() {
    std::process::exit(fieldcdf::cli::run(std::env::args_os()));
}

fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(macrosig::cli::run())
}

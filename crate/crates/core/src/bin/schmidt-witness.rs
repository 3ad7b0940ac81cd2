fn main() -> std::process::ExitCode {
    schmidt_witness::cli::main()
}

fn main() -> std::process::ExitCode {
    chroma::cli::main()
}

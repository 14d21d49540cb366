fn main() -> std::process::ExitCode {
    harmonic_valence::cli::main()
}

fn main() -> std::process::ExitCode {
    wangsun::cli::main()
}

use clap::Parser;

fn main() {
    let cli = semitotal_cli::cli::Cli::parse();
    std::process::exit(semitotal_cli::cli::main_with(cli));
}

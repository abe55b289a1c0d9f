use clap::Parser;

fn main() {
    let cli = zenodwell_cli::Cli::parse();
    if let Err(e) = zenodwell_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

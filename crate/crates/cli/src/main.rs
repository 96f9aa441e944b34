use clap::Parser;

fn main() {
    let cli = wavebound_cli::Cli::parse();
    if let Err(e) = wavebound_cli::run(&cli) {
        eprintln!("wavebound: {e}");
        std::process::exit(e.exit_code());
    }
}

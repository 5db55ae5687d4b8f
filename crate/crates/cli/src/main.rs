use clap::Parser;

fn main() {
    // clap prints usage to stderr and exits 2 on unknown flags/subcommands.
    let cli = eqone_cli::args::Cli::parse();
    if let Err(e) = eqone_cli::run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

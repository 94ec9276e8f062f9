use clap::Parser;

fn main() {
    let cli = spinflip::cli::Cli::parse();
    std::process::exit(spinflip::cli::run(&cli));
}

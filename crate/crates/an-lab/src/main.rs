use clap::Parser;

fn main() {
    let cli = an_lab::cli::Cli::parse();
    std::process::exit(an_lab::cli::run(cli));
}

use clap::Parser;

fn main() {
    let cli = eigensign_cli::Cli::parse();
    let code = eigensign_cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}

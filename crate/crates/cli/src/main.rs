use clap::Parser;

fn main() {
    let cli = minlap_cli::Cli::parse();
    let code = minlap_cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}

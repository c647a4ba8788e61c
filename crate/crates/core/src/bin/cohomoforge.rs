use clap::Parser;

fn main() {
    let args = cohomoforge::cli::Args::parse();
    std::process::exit(cohomoforge::cli::main_with_args(args));
}

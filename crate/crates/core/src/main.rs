use std::process::exit;

fn main() {
    exit(indexbound::cli::run(std::env::args()));
}

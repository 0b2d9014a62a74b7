use clap::Parser;

use sdtool::run::{main_entry, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are input errors (exit 3); --help and --version
            // keep clap's behavior.
            if e.use_stderr() {
                let _ = e.print();
                std::process::exit(3);
            }
            e.exit();
        }
    };
    std::process::exit(i32::from(main_entry(cli)));
}

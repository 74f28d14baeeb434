use lame_bessel::cli;

fn main() {
    let matches = cli::clap_command().get_matches();
    let outcome = match cli::config_from_matches(&matches) {
        Ok(config) => cli::run(&config),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(cli::exit_code_for(&e));
        }
    };
    std::process::exit(outcome.exit_code);
}

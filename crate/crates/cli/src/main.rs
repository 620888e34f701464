use std::process::ExitCode;

use mstc_cli::{parse_args, run, Command, Kind};

fn main() -> ExitCode {
    let result = parse_args(std::env::args_os()).and_then(|cmd| match cmd {
        Command::Info(text) => {
            print!("{text}");
            Ok(())
        }
        Command::ListKinds => {
            for k in Kind::ALL {
                let keys: Vec<String> = k.keys().iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<16} {}", k.name(), k.description());
                println!("{:<16} keys: {}", "", keys.join(" "));
            }
            Ok(())
        }
        Command::Run(sc) => run(&sc).map(|report| {
            for f in &report.files {
                println!("{}", f.display());
            }
        }),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mstc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

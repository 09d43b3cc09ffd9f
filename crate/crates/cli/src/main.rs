use std::fs;
use std::panic;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use stratify_cli::{run, Cli, CliError};

fn emit(cli: &Cli) -> Result<i32, CliError> {
    let outcome = run(cli)?;
    let mut json = serde_json::to_string_pretty(&outcome.report).expect("reports serialise");
    json.push('\n');
    let code = outcome.status.code();
    match &cli.out {
        Some(path) => {
            let io = |source| CliError::Io { path: path.display().to_string(), source };
            fs::write(path, &json).map_err(io)?;
            let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            let mut log = path.clone().into_os_string();
            log.push(".log");
            fs::write(&log, format!("command {} finished at unix time {stamp} with exit code {code}\n", cli.command.name())).map_err(io)?;
            println!("{}", outcome.summary);
        }
        None => {
            print!("{json}");
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { CliError::USAGE_CODE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match panic::catch_unwind(|| emit(&cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.code()
        }
        // an internal assertion fired
        Err(_) => 2,
    };
    ExitCode::from(code as u8)
}

mod args;
mod input;
mod output;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use args::{Cli, Command};
use output::Manifest;

/// Everything that ends a run early. Exit status 2, or 3 for exhaustion.
#[derive(Debug)]
pub enum CliError {
    Lib(intcheb::Error),
    Usage { code: &'static str, message: String },
}

impl CliError {
    pub fn usage(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { code, message: message.into() }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Usage { code, .. } => code,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage { message, .. } => message.clone(),
        }
    }

    fn status(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_exhaustion() => 3,
            _ => 2,
        }
    }
}

impl From<intcheb::Error> for CliError {
    fn from(e: intcheb::Error) -> Self {
        CliError::Lib(e)
    }
}

const PRECISION_ENV: &str = "INTCHEB_PRECISION_CAP";

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout().lock();
    let (text, status) = match execute(argv) {
        Ok(done) => done,
        Err(e) => {
            let body = serde_json::json!({ "error": { "code": e.code(), "message": e.message() } });
            (output::to_json(&body), e.status())
        }
    };
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    ExitCode::from(status)
}

/// Returns the text to print and the exit status.
fn execute(mut argv: Vec<String>) -> Result<(String, u8), CliError> {
    let threads = input::take_flag(&mut argv, "threads");
    if let Some(path) = input::take_flag(&mut argv, "config") {
        let cfg: Value = serde_json::from_str(&input::read(&path)?).map_err(|e| CliError::usage("invalid_config", format!("{path}: {e}")))?;
        input::merge_config(&mut argv, &cfg)?;
    }
    let cli = match parse(&argv)? {
        Ok(cli) => cli,
        Err(shown) => return Ok((shown, 0)),
    };
    if let Some(t) = threads {
        set_threads(&t)?;
    }
    let cli = if let Command::Replay(r) = &cli.command {
        let manifest = output::manifest_of(&input::read(&r.file)?)?;
        argv = manifest
            .get("argv")
            .and_then(Value::as_array)
            .and_then(|a| a.iter().map(|s| s.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| CliError::usage("invalid_argument", "manifest has no argv list"))?;
        match parse(&argv)? {
            Ok(cli) if !matches!(cli.command, Command::Replay(_)) => cli,
            _ => return Err(CliError::usage("invalid_argument", "manifest does not name a runnable command")),
        }
    } else {
        cli
    };

    let precision_cap = match cli.global.precision_cap {
        Some(bits) => bits,
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| CliError::usage("invalid_argument", format!("{PRECISION_ENV}=`{v}` is not a bit count")))?,
            Err(_) => intcheb::roots::default_precision_cap(),
        },
    };
    if cli.global.precision_cap.is_none() {
        // pin the cap in the recorded argv so a replay does not depend on the environment
        argv.push("--precision-cap".into());
        argv.push(precision_cap.to_string());
    }
    intcheb::roots::set_default_precision_cap(precision_cap);

    let outcome = run::run(&cli.command, cli.global.eps, precision_cap)?;
    let mut parameters = serde_json::to_value(&cli.command).expect("arguments serialize");
    trim_strings(&mut parameters);
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: command_path(&parameters),
        argv,
        parameters,
        eps: cli.global.eps,
        precision_cap,
        timestamp: timestamp(cli.global.stamp),
    };
    let text = match (&outcome.table, cli.global.csv, cli.global.wide) {
        (Some(table), true, true) => output::to_wide_csv(table, &manifest),
        (_, true, _) => output::to_long_csv(&output::document(outcome.value, &manifest)),
        _ => output::to_json(&output::document(outcome.value, &manifest)),
    };
    Ok((text, if outcome.exhausted { 3 } else { 0 }))
}

/// `Ok(Err(text))` when clap handled help or version output itself.
fn parse(argv: &[String]) -> Result<Result<Cli, String>, CliError> {
    let shielded = input::shield_negative(argv);
    match Cli::try_parse_from(std::iter::once("intcheb".to_string()).chain(shielded)) {
        Ok(cli) => Ok(Ok(cli)),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Err(e.render().to_string())),
            ErrorKind::InvalidSubcommand => Err(CliError::usage("unknown_subcommand", first_line(&e))),
            _ => Err(CliError::usage("usage", first_line(&e))),
        },
    }
}

fn first_line(e: &clap::Error) -> String {
    let text = e.render().to_string();
    text.lines().next().unwrap_or("").trim_start_matches("error: ").to_string()
}

/// `icheb hilbert` from `{"icheb":{"hilbert":{...}}}`.
fn command_path(parameters: &Value) -> String {
    let mut words = Vec::new();
    let mut v = parameters;
    while let Some((k, inner)) = v.as_object().filter(|m| m.len() == 1).and_then(|m| m.iter().next()) {
        words.push(k.clone());
        if !matches!(k.as_str(), "poly" | "icheb" | "schur") {
            break;
        }
        v = inner;
    }
    words.join(" ")
}

/// Drops the padding added by [`input::shield_negative`].
fn trim_strings(v: &mut Value) {
    match v {
        Value::String(s) if s.starts_with(' ') => *s = s.trim_start().to_string(),
        Value::Array(items) => items.iter_mut().for_each(trim_strings),
        Value::Object(m) => m.values_mut().for_each(trim_strings),
        _ => {}
    }
}

fn timestamp(stamp: bool) -> Option<u64> {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.trim().parse().ok()) {
        return Some(t);
    }
    stamp.then(|| std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
}

#[cfg(feature = "parallel")]
fn set_threads(t: &str) -> Result<(), CliError> {
    let n: usize = t.trim().parse().map_err(|_| CliError::usage("invalid_argument", format!("--threads `{t}` is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage("invalid_argument", format!("thread pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn set_threads(t: &str) -> Result<(), CliError> {
    t.trim().parse::<usize>().map(|_| ()).map_err(|_| CliError::usage("invalid_argument", format!("--threads `{t}` is not a count")))
}

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use mstc_core::{parse_kv, Scheme};

use crate::error::CliError;
use crate::scenario::{Kind, Scenario};

#[derive(Debug, Parser)]
#[command(name = "mstc", version, about = "Run symbol-time-compression OFDM experiments and write CSV results")]
struct Args {
    /// Experiment kind, or `list` to print the available kinds.
    #[arg(long)]
    kind: Option<String>,

    /// Comma-separated schemes: conventional, cstc, mstc.
    #[arg(long, value_delimiter = ',', default_value = "conventional,cstc,mstc")]
    schemes: Vec<String>,

    /// Top-level random seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Output directory for CSV files.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Override a key (repeatable): `--set key=value`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Flat key=value file; `--set` entries take precedence.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

/// What the process should do.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Run(Scenario),
    ListKinds,
    /// Help or version text requested; print it and exit successfully.
    Info(String),
}

/// Parse a full argument vector (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Command::Info(e.to_string()));
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let kind = match args.kind.as_deref() {
        None => {
            return Err(CliError::Usage(format!(
                "--kind is required; valid kinds: {}, or list",
                Kind::valid_names()
            )))
        }
        Some("list") => return Ok(Command::ListKinds),
        Some(k) => k.parse::<Kind>()?,
    };

    let mut schemes = Vec::new();
    for s in &args.schemes {
        let scheme: Scheme = s.parse().map_err(|e: mstc_core::Error| CliError::Usage(e.to_string()))?;
        if !schemes.contains(&scheme) {
            schemes.push(scheme);
        }
    }
    if schemes.is_empty() {
        return Err(CliError::Usage("--schemes lists no scheme".into()));
    }

    let mut overrides = BTreeMap::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let pairs = parse_kv(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        overrides.extend(pairs);
    }
    for entry in &args.set {
        let (k, v) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got '{entry}'")))?;
        overrides.insert(k.trim().to_string(), v.trim().to_string());
    }
    if let Some(bad) = overrides.keys().find(|k| !kind.accepts(k)) {
        let mut valid: Vec<&str> = kind.keys().iter().map(|(k, _)| *k).collect();
        valid.extend(mstc_core::config::CONFIG_KEYS.iter().filter(|k| **k != "scheme"));
        return Err(CliError::Usage(format!(
            "unknown key '{bad}' for kind {kind}; valid keys: {}",
            valid.join(", ")
        )));
    }
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }

    Ok(Command::Run(Scenario {
        kind,
        schemes,
        overrides,
        output_dir: args.out,
        seed: args.seed,
        jobs: args.jobs,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Command, CliError> {
        parse_args(std::iter::once("mstc").chain(args.iter().copied()))
    }

    fn scenario(args: &[&str]) -> Scenario {
        match run(args).unwrap() {
            Command::Run(s) => s,
            other => panic!("expected a scenario, got {other:?}"),
        }
    }

    #[test]
    fn complexity_with_override() {
        let s = scenario(&["--kind", "complexity", "--set", "n=128"]);
        assert_eq!(s.kind, Kind::Complexity);
        assert_eq!(s.overrides["n"], "128");
        assert_eq!(s.schemes, Scheme::ALL.to_vec());
    }

    #[test]
    fn two_scheme_ber() {
        let s = scenario(&["--kind", "ber", "--schemes", "conventional,mstc", "--seed", "7"]);
        assert_eq!(s.kind, Kind::Ber);
        assert_eq!(s.schemes, vec![Scheme::ConventionalOfdm, Scheme::MstcOfdm]);
        assert_eq!(s.seed, 7);
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["--seed", "3"][..],
            &["--kind", "bogus"],
            &["--kind", "ber", "--set", "n=3"],
            &["--kind", "ber", "--set", "noequals"],
            &["--kind", "ber", "--set", "scheme=mstc"],
            &["--kind", "ber", "--schemes", "ofdm"],
            &["--kind", "ber", "--frobnicate"],
            &["--kind", "ber", "--jobs", "0"],
        ] {
            let e = run(args).unwrap_err();
            assert_eq!(e.exit_code(), 1, "{args:?}: {e}");
        }
        let msg = run(&["--kind", "bogus"]).unwrap_err().to_string();
        assert!(msg.contains("papr_ccdf") && msg.contains("complexity"));
    }

    #[test]
    fn list_and_help() {
        assert_eq!(run(&["--kind", "list"]).unwrap(), Command::ListKinds);
        assert!(matches!(run(&["--help"]).unwrap(), Command::Info(_)));
    }

    #[test]
    fn config_file_merges_under_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scenario.cfg");
        std::fs::write(&path, "# profile\nn = 256\nrng_seed = 4\n").unwrap();
        let p = path.to_str().unwrap();
        let s = scenario(&["--kind", "complexity", "--config", p, "--set", "n=512"]);
        assert_eq!(s.overrides["n"], "512");
        assert_eq!(s.overrides["rng_seed"], "4");
        assert_eq!(s.value("n"), "512");
    }
}

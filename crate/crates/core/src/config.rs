//! Flat `key = value` configuration files mirroring the command-line flags.
//!
//! ```text
//! # comments and blank lines are ignored
//! tail-tol = 1e-10
//! lambda = 0.5
//! axis = r:0:3:101
//! ```
//!
//! Keys are long flag names; underscores are accepted for hyphens. A key
//! may repeat for flags that take several values. `key = true` enables a
//! switch. Flags given on the command line take precedence.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

pub fn parse_config(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("line {}: expected `key = value`, got `{line}`", n + 1))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(Error::InvalidConfig(format!("line {}: bad key `{key}`", n + 1)));
        }
        if key == "config" {
            return Err(Error::InvalidConfig(format!("line {}: nested config files are not supported", n + 1)));
        }
        out.push(Entry { key, value });
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<Vec<Entry>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn flag_present(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("{flag}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

fn config_path(args: &[String]) -> Result<Option<String>> {
    for (k, a) in args.iter().enumerate() {
        if a == "--config" {
            return args
                .get(k + 1)
                .cloned()
                .map(Some)
                .ok_or_else(|| Error::InvalidConfig("--config needs a path".into()));
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
    }
    Ok(None)
}

/// Splices the entries of the `--config` file, if any, into `args` right
/// after the first token naming one of `subcommands`. Keys already given
/// on the command line are skipped.
pub fn expand_args(args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let entries = load_config(Path::new(&path))?;
    let mut tokens = Vec::new();
    for e in entries {
        if flag_present(&args, &e.key) {
            continue;
        }
        match e.value.as_str() {
            "true" => tokens.push(format!("--{}", e.key)),
            "false" => {}
            v => {
                tokens.push(format!("--{}", e.key));
                tokens.push(v.to_string());
            }
        }
    }
    let at = args
        .iter()
        .skip(1)
        .position(|a| subcommands.contains(&a.as_str()))
        .map(|k| k + 2)
        .unwrap_or(args.len());
    let mut out = args;
    out.splice(at..at, tokens);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_entries() {
        let e = parse_config("# c\n\ntail_tol = 1e-10\n--axis = \"r:0:3:5\"\n").unwrap();
        assert_eq!(
            e,
            vec![
                Entry { key: "tail-tol".into(), value: "1e-10".into() },
                Entry { key: "axis".into(), value: "r:0:3:5".into() },
            ]
        );
        assert!(parse_config("lambda 0.5").is_err());
        assert!(parse_config("config = other.cfg").is_err());
    }

    #[test]
    fn splices_after_subcommand_and_respects_cli() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "lambda = 0.5\nM = 4\nr = 0.1\nverbose = true\nquiet = false").unwrap();
        let path = f.path().to_str().unwrap().to_string();
        let args = strings(&["bin", "--config", &path, "evolve", "--r", "0.2"]);
        let out = expand_args(args, &["evolve", "state"]).unwrap();
        assert_eq!(
            out,
            strings(&["bin", "--config", &path, "evolve", "--lambda", "0.5", "--M", "4", "--verbose", "--r", "0.2"])
        );
    }

    #[test]
    fn no_config_is_identity() {
        let args = strings(&["bin", "verify"]);
        assert_eq!(expand_args(args.clone(), &["verify"]).unwrap(), args);
        let missing = strings(&["bin", "verify", "--config", "/nonexistent/x.cfg"]);
        assert!(matches!(expand_args(missing, &["verify"]), Err(Error::InvalidConfig(_))));
    }
}

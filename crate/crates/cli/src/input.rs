//! Parsing of command-line values and config merging.

use intcheb::schur::FamilySpec;
use intcheb::{IntPoly, Interval, RatPoly};
use serde_json::Value;

use crate::args::{FamilyArgs, FamilyKind};
use crate::CliError;

/// Splits loosely written coefficient lists: `[ "0","1" ]`, `0,1`, `0 1`.
pub fn coeff_tokens(raw: &[String]) -> Result<Vec<String>, CliError> {
    let joined = raw.join(" ");
    let cleaned: String = joined.chars().map(|c| if matches!(c, '[' | ']' | '"' | '\'') { ' ' } else { c }).collect();
    let items: Vec<String> = cleaned.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::to_string).collect();
    if items.is_empty() {
        return Err(CliError::Lib(intcheb::Error::MalformedPolynomial("empty coefficient list".into())));
    }
    Ok(items)
}

pub fn int_poly(raw: &[String]) -> Result<IntPoly, CliError> {
    Ok(IntPoly::from_strings(&coeff_tokens(raw)?)?)
}

pub fn rat_poly(raw: &[String]) -> Result<RatPoly, CliError> {
    Ok(RatPoly::from_strings(&coeff_tokens(raw)?)?)
}

/// Any malformed interval reports as `invalid_interval`.
pub fn interval(s: &str) -> Result<Interval, CliError> {
    Interval::parse(s.trim()).map_err(|e| match e {
        intcheb::Error::InvalidInterval { .. } => CliError::Lib(e),
        other => CliError::usage("invalid_interval", other.to_string()),
    })
}

/// `25,50,100` or the inclusive range `1..10`.
fn params(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::usage("invalid_argument", format!("bad parameter list `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

pub fn family(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    let list = || -> Result<Vec<usize>, CliError> {
        let p = args.params.as_deref().ok_or_else(|| CliError::usage("invalid_argument", "--params is required for this family"))?;
        params(p)
    };
    Ok(match args.family {
        FamilyKind::Chebyshev04 => FamilySpec::Chebyshev04 { degrees: list()? },
        FamilyKind::Chebyshev04Trace => FamilySpec::Chebyshev04Trace { primes: list()? },
        FamilyKind::PrimeCyclotomic => FamilySpec::PrimeCyclotomic { ks: list()? },
        FamilyKind::UserList => {
            let path = args.polys.as_deref().ok_or_else(|| CliError::usage("invalid_argument", "--polys is required for user_list"))?;
            let text = read(path)?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Lib(intcheb::Error::MalformedPolynomial(format!("{path}: {e}"))))?;
            let polys = v
                .as_array()
                .ok_or_else(|| CliError::Lib(intcheb::Error::MalformedPolynomial(format!("{path}: expected a list of polynomials"))))?
                .iter()
                .map(json_coeffs)
                .collect::<Result<Vec<_>, _>>()?;
            FamilySpec::UserList { polys }
        }
    })
}

/// One polynomial in interchange form; integers are accepted in place of strings.
fn json_coeffs(v: &Value) -> Result<Vec<String>, CliError> {
    let bad = || CliError::Lib(intcheb::Error::MalformedPolynomial(format!("expected a coefficient list, got {v}")));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|c| match c {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            _ => Err(bad()),
        })
        .collect()
}

pub fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage("io", format!("{path}: {e}")))
}

/// Values like `-1,0,1` or `-1/2` would be taken for flags; a leading space
/// hides the hyphen from the parser and is trimmed again by every value parser.
pub fn shield_negative(argv: &[String]) -> Vec<String> {
    argv.iter()
        .map(|a| {
            let mut c = a.chars();
            if c.next() == Some('-') && c.next().is_some_and(|d| d.is_ascii_digit() || d == '.') {
                format!(" {a}")
            } else {
                a.clone()
            }
        })
        .collect()
}

fn flag_present(argv: &[String], name: &str) -> bool {
    let long = format!("--{name}");
    argv.iter().any(|a| *a == long || a.starts_with(&format!("{long}=")))
}

/// Removes `--name VALUE` / `--name=VALUE`, returning the value.
pub fn take_flag(argv: &mut Vec<String>, name: &str) -> Option<String> {
    let long = format!("--{name}");
    let i = argv.iter().position(|a| *a == long || a.starts_with(&format!("{long}=")))?;
    let tok = argv.remove(i);
    if let Some(v) = tok.strip_prefix(&format!("{long}=")) {
        return Some(v.to_string());
    }
    (i < argv.len()).then(|| argv.remove(i))
}

pub const TOP_LEVEL: &[&str] = &["poly", "roots", "mahler", "cheb", "icheb", "schur", "families", "replay", "help"];

/// Fills flags missing from `argv` with config entries. The key `command`
/// (a list such as `["icheb","hilbert"]`) supplies the subcommand when none
/// is given.
pub fn merge_config(argv: &mut Vec<String>, config: &Value) -> Result<(), CliError> {
    let obj = config.as_object().ok_or_else(|| CliError::usage("invalid_config", "config must be a JSON object"))?;
    if let Some(cmd) = obj.get("command") {
        if !argv.iter().any(|a| TOP_LEVEL.contains(&a.as_str())) {
            let words = cmd
                .as_array()
                .ok_or_else(|| CliError::usage("invalid_config", "`command` must be a list of words"))?
                .iter()
                .map(|w| w.as_str().map(str::to_string).ok_or_else(|| CliError::usage("invalid_config", "`command` must be a list of words")))
                .collect::<Result<Vec<_>, _>>()?;
            argv.splice(0..0, words);
        }
    }
    for (key, value) in obj {
        if key == "command" {
            continue;
        }
        let name = key.replace('_', "-");
        if matches!(name.as_str(), "config" | "threads") || flag_present(argv, &name) {
            continue;
        }
        let flag = format!("--{name}");
        match value {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                argv.push(flag);
                argv.extend(items.iter().map(scalar));
            }
            Value::Object(_) => return Err(CliError::usage("invalid_config", format!("config key `{key}` must not be an object"))),
            v => {
                argv.push(flag);
                argv.push(scalar(v));
            }
        }
    }
    Ok(())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

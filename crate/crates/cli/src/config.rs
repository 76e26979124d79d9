//! Optional JSON config file mirroring the command-line flags.
//!
//! The file holds one object per subcommand, keyed by long flag name:
//!
//! ```json
//! { "gen": { "kind": "square", "n": 5 }, "score": { "epsilon-square": 0.02 } }
//! ```
//!
//! Config values are spliced in right after the subcommand name, so any flag
//! given on the command line (which comes later) overrides them.

use std::ffi::OsString;
use std::path::Path;

use lattice_order::Error;
use serde_json::Value;

/// Splice config-file flags into `args`, returning the rewritten argument list.
pub fn apply(args: Vec<OsString>) -> Result<Vec<OsString>, Error> {
    let Some((config_path, rest)) = take_config_flag(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&config_path))?;
    let json: Value = serde_json::from_str(&text)?;
    let Value::Object(sections) = json else {
        return Err(Error::Format("config file must hold a JSON object".into()));
    };

    let Some(sub_pos) = rest.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map(|p| p + 1) else {
        return Ok(rest);
    };
    let sub = rest[sub_pos].to_string_lossy().into_owned();
    let Some(section) = sections.get(&sub) else {
        return Ok(rest);
    };
    let Value::Object(flags) = section else {
        return Err(Error::Format(format!("config section '{sub}' must be an object")));
    };

    let mut injected = Vec::new();
    for (key, value) in flags {
        let flag = format!("--{key}");
        match value {
            Value::Bool(true) => injected.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => {
                injected.push(flag.into());
                injected.push(n.to_string().into());
            }
            Value::String(s) => {
                injected.push(flag.into());
                injected.push(s.into());
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "config key '{sub}.{key}' has unsupported value {other}"
                )))
            }
        }
    }
    let mut out = rest[..=sub_pos].to_vec();
    out.extend(injected);
    out.extend_from_slice(&rest[sub_pos + 1..]);
    Ok(out)
}

/// Remove a leading `--config PATH` (or `--config=PATH`) appearing before the subcommand.
fn take_config_flag(args: &[OsString]) -> Option<(OsString, Vec<OsString>)> {
    let mut rest = Vec::with_capacity(args.len());
    let mut found = None;
    let mut iter = args.iter().cloned().enumerate();
    while let Some((i, arg)) = iter.next() {
        let s = arg.to_string_lossy();
        if i > 0 && found.is_none() && s == "--config" {
            found = iter.next().map(|(_, v)| v);
            continue;
        }
        if i > 0 && found.is_none() {
            if let Some(v) = s.strip_prefix("--config=") {
                found = Some(OsString::from(v));
                continue;
            }
        }
        rest.push(arg);
    }
    found.map(|f| (f, rest))
}

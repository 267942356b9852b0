//! `--config file.json` support: the file's keys become flags placed ahead
//! of the user's own flags, so anything given on the command line wins.

use std::fs;

use serde_json::Value;

const GLOBAL_VALUE_FLAGS: [&str; 3] = ["--format", "--out", "--config"];

/// Returns `args` with the config file's entries spliced in after the
/// subcommand path. Without `--config` the arguments are returned as is.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = find_config(&args)? else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("config {path} is not valid JSON: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("config {path} must hold a JSON object"));
    };
    let mut injected = Vec::new();
    for (key, val) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            return Err("config files cannot include other config files".into());
        }
        match val {
            Value::Bool(true) => injected.push(flag),
            Value::Bool(false) => {}
            Value::Number(n) => injected.extend([flag, n.to_string()]),
            Value::String(s) => injected.extend([flag, s]),
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|v| match v {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        _ => Err(format!(
                            "config key {key}: arrays may hold numbers or strings only"
                        )),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                injected.extend([flag, parts.join(",")]);
            }
            Value::Null | Value::Object(_) => {
                return Err(format!("config key {key}: unsupported value"));
            }
        }
    }
    let at = subcommand_end(&args);
    let mut out = args[..at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

fn find_config(args: &[String]) -> Result<Option<String>, String> {
    let mut found = None;
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if a == "--config" {
            let v = args.get(i + 1).ok_or("--config needs a file path")?;
            found = Some(v.clone());
            i += 1;
        } else if let Some(v) = a.strip_prefix("--config=") {
            found = Some(v.to_string());
        }
        i += 1;
    }
    Ok(found)
}

/// Index just past the subcommand words (e.g. `oracle gaussian`),
/// skipping global flags that precede them.
fn subcommand_end(args: &[String]) -> usize {
    let mut i = 1;
    while i < args.len() && args[i].starts_with('-') {
        if GLOBAL_VALUE_FLAGS.contains(&args[i].as_str()) {
            i += 1;
        }
        i += 1;
    }
    while i < args.len() && !args[i].starts_with('-') {
        i += 1;
    }
    i.min(args.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn subcommand_path_detection() {
        assert_eq!(
            subcommand_end(&s(&["lqvac", "oracle", "gaussian", "--w-re", "2"])),
            3
        );
        assert_eq!(
            subcommand_end(&s(&["lqvac", "--format", "csv", "width", "--rho", "1"])),
            4
        );
        assert_eq!(subcommand_end(&s(&["lqvac", "scales"])), 2);
    }

    #[test]
    fn without_config_is_identity() {
        let a = s(&["lqvac", "width", "--rho", "1"]);
        assert_eq!(expand(a.clone()).unwrap(), a);
    }

    #[test]
    fn config_values_precede_user_flags() {
        let dir = std::env::temp_dir().join(format!("lqvac-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"rho": 2, "r_at": [0, 1, 2], "vectors": true}"#).unwrap();
        let p = path.to_str().unwrap();
        let out = expand(s(&["lqvac", "width", "--config", p, "--rho", "3"])).unwrap();
        assert_eq!(
            out,
            s(&[
                "lqvac",
                "width",
                "--r-at",
                "0,1,2",
                "--rho",
                "2",
                "--vectors",
                "--config",
                p,
                "--rho",
                "3"
            ])
        );
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

//! Splices a JSON config file into the argument list.
//!
//! Keys become `--key=value` flags placed ahead of the command-line flags, so
//! anything given explicitly overrides the file. A `command` key selects the
//! subcommand when none is given.

use std::fs;

use anyhow::{bail, Context};
use serde_json::{Map, Value};

const GLOBAL_KEYS: &[&str] = &["output", "no-guard", "verbose"];
const VALUE_FLAGS: &[&str] = &["--config", "--output", "-o"];

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_owned());
        }
    }
    None
}

fn subcommand_index(argv: &[String], names: &[&str]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let a = argv[i].as_str();
        if VALUE_FLAGS.contains(&a) {
            i += 2;
        } else if names.contains(&a) {
            return Some(i);
        } else {
            i += 1;
        }
    }
    None
}

fn to_flags(key: &str, value: &Value) -> anyhow::Result<Vec<String>> {
    let flag = format!("--{}", key.replace('_', "-"));
    Ok(match value {
        Value::Null | Value::Bool(false) => vec![],
        Value::Bool(true) => vec![flag],
        Value::Number(n) => vec![format!("{flag}={n}")],
        Value::String(s) => vec![format!("{flag}={s}")],
        Value::Array(items) => {
            let parts = items
                .iter()
                .map(|v| match v {
                    Value::Number(n) => Ok(n.to_string()),
                    Value::String(s) => Ok(s.clone()),
                    _ => bail!("config key {key:?}: arrays may hold only numbers and strings"),
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            vec![format!("{flag}={}", parts.join(","))]
        }
        Value::Object(_) => bail!("config key {key:?}: nested objects are not supported"),
    })
}

pub fn expand(argv: Vec<String>, names: &[&str]) -> anyhow::Result<Vec<String>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let map: Map<String, Value> =
        serde_json::from_str(&text).with_context(|| format!("config {path} must be a JSON object"))?;

    let mut argv = argv;
    let sub = match subcommand_index(&argv, names) {
        Some(i) => i,
        None => match map.get("command") {
            Some(Value::String(c)) => {
                argv.insert(1, c.clone());
                1
            }
            _ => return Ok(argv),
        },
    };

    let (mut global, mut local) = (Vec::new(), Vec::new());
    for (key, value) in &map {
        if key == "command" {
            continue;
        }
        let flags = to_flags(key, value)?;
        if GLOBAL_KEYS.contains(&key.replace('_', "-").as_str()) {
            global.extend(flags);
        } else {
            local.extend(flags);
        }
    }
    log::debug!("config {path}: global {global:?}, command {local:?}");
    let tail = argv.split_off(sub + 1);
    let mut head = argv;
    let cmd = head.pop().expect("subcommand present");
    let mut out: Vec<String> = head.drain(..1).collect();
    out.extend(global);
    out.extend(head);
    out.push(cmd);
    out.extend(local);
    out.extend(tail);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn flags_from_values() {
        assert_eq!(to_flags("sigma2", &Value::from(25)).unwrap(), ["--sigma2=25"]);
        assert_eq!(
            to_flags("hbar_over_m", &Value::from(0.5)).unwrap(),
            ["--hbar-over-m=0.5"]
        );
        assert_eq!(to_flags("no_guard", &Value::from(true)).unwrap(), ["--no-guard"]);
        assert!(to_flags("no_guard", &Value::from(false)).unwrap().is_empty());
        assert_eq!(to_flags("h0", &serde_json::json!([1, 2.5])).unwrap(), ["--h0=1,2.5"]);
        assert!(to_flags("x", &serde_json::json!({"a": 1})).is_err());
    }

    #[test]
    fn subcommand_is_found_past_value_flags() {
        let names = ["collide", "hydrogen"];
        assert_eq!(
            subcommand_index(&args("q --output x.csv collide --p1 2"), &names),
            Some(3)
        );
        assert_eq!(subcommand_index(&args("q --output hydrogen collide"), &names), Some(3));
        assert_eq!(subcommand_index(&args("q -v hydrogen"), &names), Some(2));
        assert_eq!(subcommand_index(&args("q --steps 2"), &names), None);
    }

    #[test]
    fn splice_order() {
        let dir = std::env::temp_dir().join(format!("qentropy-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        fs::write(&path, r#"{"command": "collide", "p1": 2, "output": "a.csv"}"#).unwrap();
        let p = path.to_str().unwrap();
        let out = expand(args(&format!("q --config {p} collide --p1 1")), &["collide"]).unwrap();
        assert_eq!(
            out,
            args(&format!("q --output=a.csv --config {p} collide --p1=2 --p1 1"))
        );
        let out = expand(args(&format!("q --config {p} --steps 4")), &["collide"]).unwrap();
        assert_eq!(
            out,
            args(&format!("q --output=a.csv collide --p1=2 --config {p} --steps 4"))
        );
        fs::remove_dir_all(&dir).unwrap();
    }
}

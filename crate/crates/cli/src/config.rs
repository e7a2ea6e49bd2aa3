//! Option resolution: command-line flag, then `SPB_<KEY>` environment
//! variable, then the `key=value` config file, then the built-in default.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};

pub const ENV_PREFIX: &str = "SPB_";

#[derive(Debug, Default, Clone)]
pub struct Settings {
    file: HashMap<String, String>,
    env: HashMap<String, String>,
}

impl Settings {
    /// Loads the config file named by `path` (or by `SPB_CONFIG`) and
    /// snapshots the `SPB_*` environment.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let env: HashMap<String, String> = std::env::vars()
            .filter_map(|(k, v)| {
                k.strip_prefix(ENV_PREFIX)
                    .map(|k| (k.to_ascii_lowercase(), v))
            })
            .collect();
        let path = path
            .map(Path::to_path_buf)
            .or_else(|| env.get("config").map(Into::into));
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .with_context(|| format!("reading config file {}", p.display()))?;
                parse_config(&text)?
            }
            None => HashMap::new(),
        };
        Ok(Settings { file, env })
    }

    #[cfg(test)]
    pub fn from_parts(file: &str, env: &[(&str, &str)]) -> Result<Self> {
        Ok(Settings {
            file: parse_config(file)?,
            env: env
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        })
    }

    /// Raw value for `key` from the environment or the config file.
    fn lookup(&self, key: &str) -> Option<(&str, &str)> {
        self.env
            .get(key)
            .map(|v| ("environment", v.as_str()))
            .or_else(|| self.file.get(key).map(|v| ("config file", v.as_str())))
    }

    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.resolve_opt(flag, key)?.unwrap_or(default))
    }

    pub fn resolve_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.lookup(key) {
            None => Ok(None),
            Some((source, raw)) => raw
                .trim()
                .parse()
                .map(Some)
                .map_err(|e| anyhow!("{key}={raw:?} from {source}: {e}")),
        }
    }
}

fn parse_config(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key=value", i + 1))?;
        map.insert(
            k.trim().replace('-', "_").to_ascii_lowercase(),
            v.trim().to_string(),
        );
    }
    Ok(map)
}

/// Comma-separated list of values, used for `t` lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<Vec<T>, String>>()
            .map(List)
    }
}

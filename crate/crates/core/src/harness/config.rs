//! Flat `key=value` configuration files and command-line overrides.

use std::path::{Path, PathBuf};

use super::{expand_preset, PresetId, RunConfig};
use crate::error::{Error, Result};

/// Every accepted key, in the order they are applied.
pub const KEYS: [&str; 20] = [
    "preset", "K", "K1", "K2", "K3", "R", "lambda", "r1", "r2", "r3", "a", "b", "c", "phi", "p",
    "t_end", "samples", "solver", "label", "output",
];

fn canonical(key: &str) -> Result<&'static str> {
    KEYS.iter()
        .copied()
        .find(|k| *k == key)
        .ok_or_else(|| Error::Config(format!("unknown key `{key}`")))
}

fn split_pair(token: &str) -> Result<(&'static str, String)> {
    let (key, value) = token
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("expected key=value, got `{token}`")))?;
    let key = canonical(key.trim())?;
    let value = value.trim();
    if value.is_empty() {
        return Err(Error::Config(format!("`{key}` has an empty value")));
    }
    Ok((key, value.to_owned()))
}

/// Parses `KEY=VALUE` tokens such as command-line `--set` arguments.
pub fn parse_overrides<S: AsRef<str>>(tokens: &[S]) -> Result<Vec<(&'static str, String)>> {
    tokens.iter().map(|t| split_pair(t.as_ref())).collect()
}

fn parse_text(text: &str) -> Result<Vec<(&'static str, String)>> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for token in content.split_whitespace() {
            let pair = split_pair(token).map_err(|e| match e {
                Error::Config(msg) => Error::Config(format!("line {}: {msg}", n + 1)),
                other => other,
            })?;
            pairs.push(pair);
        }
    }
    Ok(pairs)
}

fn number(key: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Config(format!(
            "`{key}`: cannot parse `{value}` as a finite decimal number"
        ))),
    }
}

fn count(key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}` as a count")))
}

/// `out.csv` with label `K5` becomes `out_K5.csv`.
fn suffixed(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    path.with_file_name(name)
}

fn apply(config: &mut RunConfig, key: &str, value: &str, bundle: bool) -> Result<()> {
    let p = &mut config.params;
    let s = &mut config.init;
    match key {
        "K" => p.k = [number(key, value)?; 3],
        "K1" => p.k[0] = number(key, value)?,
        "K2" => p.k[1] = number(key, value)?,
        "K3" => p.k[2] = number(key, value)?,
        "R" => p.rabi = number(key, value)?,
        "lambda" => p.lambda = number(key, value)?,
        "r1" => p.r[0] = number(key, value)?,
        "r2" => p.r[1] = number(key, value)?,
        "r3" => p.r[2] = number(key, value)?,
        "a" => s.a = number(key, value)?,
        "b" => s.b = number(key, value)?,
        "c" => s.c = number(key, value)?,
        "phi" => s.phi = number(key, value)?,
        "p" => s.p = number(key, value)?,
        "t_end" => config.t_end = number(key, value)?,
        "samples" => config.samples = count(key, value)?,
        "solver" => config.solver = value.parse()?,
        "output" if bundle => config.output = suffixed(Path::new(value), &config.label),
        "output" => config.output = PathBuf::from(value),
        "label" => config.label = value.to_owned(),
        _ => {}
    }
    Ok(())
}

/// Builds the configuration set described by `text`, with `overrides`
/// taking precedence over the file. A `preset` key expands to one
/// configuration per curve and every other key applies to all of them.
pub fn parse_config(text: &str, overrides: &[(&'static str, String)]) -> Result<Vec<RunConfig>> {
    let mut pairs = parse_text(text)?;
    pairs.extend(overrides.iter().cloned());
    let last = |key: &str| pairs.iter().rev().find(|(k, _)| *k == key).map(|(_, v)| v.as_str());

    let (mut configs, bundle) = match last("preset") {
        Some(name) => (expand_preset(name.parse::<PresetId>()?), true),
        None => (vec![RunConfig::default()], false),
    };
    // `label` precedes `output` so bundle file names pick it up.
    for key in KEYS.iter().skip(1) {
        if let Some(value) = last(key) {
            for config in &mut configs {
                apply(config, key, value, bundle)?;
            }
        }
    }
    for config in &configs {
        config.validate()?;
    }
    Ok(configs)
}

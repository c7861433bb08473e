use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use amalgam_core::{Spec, SurfaceAmalgamSpec, ThetaGraphSpec};
use serde::de::DeserializeOwned;

/// Inline JSON when the argument starts with `{`, otherwise a file path.
pub fn read_source(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(Path::new(arg)).with_context(|| format!("cannot read {arg}"))
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).with_context(|| format!("malformed {what}"))
}

/// Parses and validates a spec, listing every violation.
pub fn parse_spec(text: &str) -> Result<Spec> {
    let raw: Spec = parse_json(text, "spec")?;
    raw.validate().map_err(|errors| {
        let list: Vec<String> = errors.iter().map(|e| format!("  - {e}")).collect();
        anyhow!("invalid spec:\n{}", list.join("\n"))
    })
}

pub fn load_spec(arg: &str) -> Result<Spec> {
    parse_spec(&read_source(arg)?)
}

pub fn load_amalgam(arg: &str) -> Result<SurfaceAmalgamSpec> {
    match load_spec(arg)? {
        Spec::Amalgam(s) => Ok(s),
        Spec::Theta(_) => bail!("expected a family C spec, got family W"),
    }
}

pub fn load_theta(arg: &str) -> Result<ThetaGraphSpec> {
    match load_spec(arg)? {
        Spec::Theta(t) => Ok(t),
        Spec::Amalgam(_) => bail!("expected a family W spec, got family C"),
    }
}

//! `--spec <path>`: the whole job described as one JSON document.

use crate::{
    Command, CompareArgs, ComputeArgs, Failure, Format, Method, PermArgs, Setting, ShapeArgs,
    TableauxArgs, VerifyArgs,
};
use clap::ValueEnum;
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    command: String,
    #[serde(default)]
    shape: Option<Vec<u32>>,
    #[serde(default)]
    flag: Option<Vec<u32>>,
    #[serde(default)]
    perm: Option<String>,
    #[serde(default)]
    method: Option<String>,
    #[serde(default)]
    format: Option<String>,
    #[serde(default)]
    set: Vec<String>,
    #[serde(default)]
    trunc_margin: Option<u32>,
    #[serde(default)]
    polynomial: Option<bool>,
    #[serde(default)]
    suite: Option<String>,
    #[serde(default)]
    max_rows: Option<u32>,
    #[serde(default)]
    max_part: Option<u32>,
    #[serde(default)]
    max_flag: Option<u32>,
    #[serde(default)]
    n: Option<u32>,
    #[serde(default)]
    time_budget: Option<u64>,
}

fn enum_value<T: ValueEnum>(name: &str, value: &str) -> Result<T, Failure> {
    T::from_str(value, true).map_err(|_| Failure::invalid(format!("bad {name} `{value}`")))
}

pub fn load(path: &Path) -> Result<Command, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let spec: JobSpec = serde_json::from_str(&raw)
        .map_err(|e| Failure::invalid(format!("bad job spec: {e}")))?;

    let shape = ShapeArgs {
        shape: spec.shape.map(crate::U32List),
        flag: spec.flag.map(crate::U32List),
    };
    let format = match &spec.format {
        Some(f) => enum_value("format", f)?,
        None => Format::Text,
    };
    let method = match &spec.method {
        Some(m) => enum_value("method", m)?,
        None => Method::Tableau,
    };
    let settings = spec
        .set
        .iter()
        .map(|s| crate::parse_setting(s).map_err(Failure::invalid))
        .collect::<Result<Vec<Setting>, Failure>>()?;

    match spec.command.as_str() {
        "tableaux" => Ok(Command::Tableaux(TableauxArgs { shape, format })),
        "compute" => Ok(Command::Compute(ComputeArgs {
            shape,
            perm: spec.perm,
            method,
            format,
            settings,
            trunc_margin: spec.trunc_margin.unwrap_or(0),
        })),
        "compare" => Ok(Command::Compare(CompareArgs {
            shape,
            trunc_margin: spec.trunc_margin.unwrap_or(0),
        })),
        "perm" => Ok(Command::Perm(PermArgs {
            perm: spec
                .perm
                .ok_or_else(|| Failure::invalid("perm command needs a `perm` field"))?,
            polynomial: spec.polynomial.unwrap_or(false),
            format,
        })),
        "verify" => Ok(Command::Verify(VerifyArgs {
            suite: match &spec.suite {
                Some(s) => enum_value("suite", s)?,
                None => return Err(Failure::invalid("verify command needs a `suite` field")),
            },
            max_rows: spec.max_rows.unwrap_or(3),
            max_part: spec.max_part.unwrap_or(3),
            max_flag: spec.max_flag.unwrap_or(4),
            n: spec.n.unwrap_or(4),
            time_budget: spec.time_budget,
        })),
        other => Err(Failure::invalid(format!("unknown command `{other}`"))),
    }
}

//! Serializable reports, the shipped fixture registry and renderers.

mod bezout;
mod fintop;
mod fixtures;
mod svg;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use crate::bezoutian::{BezError, SigmaPoint};
use crate::finitetop::TopError;
use crate::plcov::analyze;

pub use bezout::{bezout_report, coord_width, BezoutReport, Coord};
pub use fintop::{fintop_report, FintopReport};
pub use fixtures::{
    fixture, fixture_names, fixture_source, load_fixture, Fixture, FixtureError, FixtureInput,
    FIXTURE_ENV,
};
pub use svg::{fiber_csv, render_svg};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Bezout(#[from] BezError),
    #[error(transparent)]
    Top(#[from] TopError),
}

/// The report for a fixture input, as JSON.
pub fn input_report(input: &FixtureInput) -> Result<Json, ReportError> {
    let json = match input {
        FixtureInput::Plcov(cov) => serde_json::to_value(analyze(cov)),
        FixtureInput::Bezout(coords) => {
            serde_json::to_value(bezout_report(&SigmaPoint::new(coords.clone())?)?)
        }
        FixtureInput::Fintop(f) => serde_json::to_value(fintop_report(f)?),
    };
    Ok(json.expect("reports serialize"))
}

pub const TOOL: &str = "branchcov";
pub const SCHEMA: u32 = 1;

/// The outer object of every command's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: Json,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<String>,
}

impl ReportEnvelope {
    pub fn new(command: Vec<String>, payload: Json) -> ReportEnvelope {
        ReportEnvelope {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA,
            command,
            seed: None,
            payload,
            timing_ms: None,
        }
    }
}

/// A field of a report that disagrees with an expectation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Json,
    pub actual: Option<Json>,
}

/// Looks up a dotted path such as `branch_witness.left`; numeric segments
/// index arrays.
pub fn lookup<'a>(value: &'a Json, path: &str) -> Option<&'a Json> {
    path.split('.').try_fold(value, |v, key| match v {
        Json::Object(m) => m.get(key),
        Json::Array(a) => key.parse::<usize>().ok().and_then(|i| a.get(i)),
        _ => None,
    })
}

/// Compares every expected key against the report.
pub fn check_expect<'a>(
    report: &Json,
    expect: impl IntoIterator<Item = (&'a String, &'a Json)>,
) -> Vec<Mismatch> {
    expect
        .into_iter()
        .filter_map(|(key, expected)| {
            let actual = lookup(report, key);
            (actual != Some(expected)).then(|| Mismatch {
                key: key.clone(),
                expected: expected.clone(),
                actual: actual.cloned(),
            })
        })
        .collect()
}

/// Parses `key=value`; the value is JSON when it parses as JSON and a string
/// otherwise.
pub fn parse_expect(src: &str) -> Option<(String, Json)> {
    let (k, v) = src.split_once('=')?;
    let k = k.trim();
    if k.is_empty() {
        return None;
    }
    let v = v.trim();
    let value = serde_json::from_str(v).unwrap_or_else(|_| Json::String(v.to_string()));
    Some((k.to_string(), value))
}

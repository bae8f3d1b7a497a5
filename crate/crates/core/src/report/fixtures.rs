use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};
use thiserror::Error;

use crate::finitetop::FinMap;
use crate::plcov::PLCovering;
use crate::rat::Rat;

/// Directory searched before the built-in fixtures.
pub const FIXTURE_ENV: &str = "BRANCHCOV_FIXTURES";

const BUILTIN: &[(&str, &str)] = &[
    (
        "bezout-n2-irrational",
        include_str!("../../fixtures/bezout-n2-irrational.json"),
    ),
    (
        "bezout-n2-regular",
        include_str!("../../fixtures/bezout-n2-regular.json"),
    ),
    (
        "bezout-n3-branch",
        include_str!("../../fixtures/bezout-n3-branch.json"),
    ),
    (
        "bezout-n3-collapse",
        include_str!("../../fixtures/bezout-n3-collapse.json"),
    ),
    ("finite-x", include_str!("../../fixtures/finite-x.json")),
    (
        "notbranched-i",
        include_str!("../../fixtures/notbranched-i.json"),
    ),
    (
        "notbranched-ii-pl",
        include_str!("../../fixtures/notbranched-ii-pl.json"),
    ),
    ("two-points", include_str!("../../fixtures/two-points.json")),
    ("x-cross", include_str!("../../fixtures/x-cross.json")),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "input", rename_all = "snake_case")]
pub enum FixtureInput {
    Plcov(PLCovering),
    /// Coordinates of a point in coefficient space.
    Bezout(Vec<Rat>),
    Fintop(FinMap),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    #[serde(flatten)]
    pub input: FixtureInput,
    #[serde(default)]
    pub expect: Map<String, Json>,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error("fixture {name:?}: {source}")]
    Malformed {
        name: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("fixture {name:?}: {source}")]
    Io {
        name: String,
        #[source]
        source: std::io::Error,
    },
}

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_ENV).map(PathBuf::from)
}

/// The raw JSON text of a fixture, preferring the override directory.
pub fn fixture_source(name: &str) -> Result<String, FixtureError> {
    if let Some(dir) = override_dir() {
        let path = dir.join(format!("{name}.json"));
        if path.is_file() {
            return std::fs::read_to_string(&path).map_err(|source| FixtureError::Io {
                name: name.to_string(),
                source,
            });
        }
    }
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| src.to_string())
        .ok_or_else(|| FixtureError::Unknown(name.to_string()))
}

pub fn load_fixture(name: &str) -> Result<Fixture, FixtureError> {
    let src = fixture_source(name)?;
    serde_json::from_str(&src).map_err(|source| FixtureError::Malformed {
        name: name.to_string(),
        source,
    })
}

/// Built-in fixture, panicking if it is missing or malformed.
pub fn fixture(name: &str) -> Fixture {
    load_fixture(name).unwrap_or_else(|e| panic!("{e}"))
}

/// Built-in names plus any `*.json` files in the override directory, sorted.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = BUILTIN.iter().map(|(n, _)| n.to_string()).collect();
    if let Some(entries) = override_dir().and_then(|d| std::fs::read_dir(d).ok()) {
        for e in entries.flatten() {
            let p = e.path();
            if p.extension().is_some_and(|x| x == "json") {
                if let Some(stem) = p.file_stem().and_then(|s| s.to_str()) {
                    names.push(stem.to_string());
                }
            }
        }
    }
    names.sort();
    names.dedup();
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        for (name, _) in BUILTIN {
            let f = load_fixture(name).unwrap();
            assert_eq!(&f.name, name);
            assert!(!f.expect.is_empty());
        }
        assert!(matches!(
            load_fixture("nope"),
            Err(FixtureError::Unknown(_))
        ));
    }
}

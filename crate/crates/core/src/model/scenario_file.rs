//! Plain-text scenario files.
//!
//! ```text
//! # symmetric network
//! h01 = 1
//! h02 = 1
//! h12 = 0.5
//! h13 = 1
//! h23 = 1
//! p0_db = 10
//! p1 = 3.5
//! p2 = 3.5
//! ```
//!
//! Every gain is required. Each power is given either linearly (`p0`) or in dB
//! (`p0_db`), never both.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{db_to_linear, validate_scenario, ChannelGains, ModelError, PowerBudget, Scenario};

#[derive(Debug, Error)]
pub enum ScenarioFileError {
    #[error("cannot read scenario file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {key} is not a number: `{value}`")]
    BadNumber { line: usize, key: String, value: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("{power} given both linearly and in dB")]
    Conflict { power: &'static str },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] ModelError),
}

const GAINS: [&str; 5] = ["h01", "h02", "h12", "h13", "h23"];
const POWERS: [&str; 3] = ["p0", "p1", "p2"];
const POWERS_DB: [&str; 3] = ["p0_db", "p1_db", "p2_db"];

/// Parses scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioFileError> {
    let mut values: BTreeMap<&str, f64> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ScenarioFileError::Syntax { line })?;
        let key = key.trim();
        let value = value.trim();
        let known = GAINS.iter().chain(&POWERS).chain(&POWERS_DB).find(|k| **k == key);
        let Some(&key) = known else {
            return Err(ScenarioFileError::UnknownKey { line, key: key.to_string() });
        };
        let number: f64 = value.parse().map_err(|_| ScenarioFileError::BadNumber {
            line,
            key: key.to_string(),
            value: value.to_string(),
        })?;
        if values.insert(key, number).is_some() {
            return Err(ScenarioFileError::Duplicate { line, key: key.to_string() });
        }
    }

    let mut gains = [0.0; 5];
    for (slot, key) in gains.iter_mut().zip(GAINS) {
        *slot = *values.get(key).ok_or(ScenarioFileError::Missing(key))?;
    }
    let mut powers = [0.0; 3];
    for (i, slot) in powers.iter_mut().enumerate() {
        *slot = match (values.get(POWERS[i]), values.get(POWERS_DB[i])) {
            (Some(_), Some(_)) => return Err(ScenarioFileError::Conflict { power: POWERS[i] }),
            (Some(&lin), None) => lin,
            (None, Some(&db)) => {
                if !db.is_finite() {
                    return Err(ModelError::NotFinite { field: POWERS_DB[i] }.into());
                }
                db_to_linear(db)
            }
            (None, None) => return Err(ScenarioFileError::Missing(POWERS[i])),
        };
    }

    let [h01, h02, h12, h13, h23] = gains;
    let [p0, p1, p2] = powers;
    Ok(validate_scenario(
        ChannelGains { h01, h02, h12, h13, h23 },
        PowerBudget { p0, p1, p2 },
    )?)
}

pub fn read_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioFileError> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

/// Renders a scenario with linear powers; `parse_scenario` reads it back exactly.
pub fn format_scenario(s: &Scenario) -> String {
    let g = &s.gains;
    let b = &s.budget;
    let mut out = String::new();
    for (k, v) in [
        ("h01", g.h01),
        ("h02", g.h02),
        ("h12", g.h12),
        ("h13", g.h13),
        ("h23", g.h23),
        ("p0", b.p0),
        ("p1", b.p1),
        ("p2", b.p2),
    ] {
        let _ = writeln!(out, "{k} = {v:?}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "h01 = 1\nh02 = 1\nh12 = 0.5\nh13 = 1\nh23 = 1\n";

    #[test]
    fn parses_linear_and_db_powers() {
        let s = parse_scenario(&format!("{BASE}p0_db = 10 # source\np1 = 2\np2_db = 0\n")).unwrap();
        assert!((s.budget.p0 - 10.0).abs() < 1e-12);
        assert_eq!(s.budget.p1, 2.0);
        assert!((s.budget.p2 - 1.0).abs() < 1e-15);
        assert_eq!(s.gains.h12, 0.5);
    }

    #[test]
    fn rejects_conflicts_and_duplicates() {
        let err = parse_scenario(&format!("{BASE}p0 = 1\np0_db = 0\np1 = 1\np2 = 1\n")).unwrap_err();
        assert_eq!(err.to_string(), "p0 given both linearly and in dB");
        let err = parse_scenario(&format!("{BASE}h01 = 2\np0 = 1\np1 = 1\np2 = 1\n")).unwrap_err();
        assert!(matches!(err, ScenarioFileError::Duplicate { line: 6, .. }), "{err}");
    }

    #[test]
    fn names_bad_fields() {
        let err = parse_scenario(&format!("{BASE}p0 = abc\np1 = 1\np2 = 1\n")).unwrap_err();
        assert_eq!(err.to_string(), "line 6: p0 is not a number: `abc`");
        let err = parse_scenario(&format!("{BASE}p1 = 1\np2 = 1\n")).unwrap_err();
        assert_eq!(err.to_string(), "missing key `p0`");
        let err = parse_scenario("h01 = -1\nh02 = 1\nh12 = 1\nh13 = 1\nh23 = 1\np0=1\np1=1\np2=1").unwrap_err();
        assert_eq!(err.to_string(), "h01 negative");
        let err = parse_scenario("h04 = 1").unwrap_err();
        assert!(matches!(err, ScenarioFileError::UnknownKey { line: 1, .. }));
        assert!(matches!(parse_scenario("h01 1"), Err(ScenarioFileError::Syntax { line: 1 })));
    }

    #[test]
    fn format_round_trips() {
        let s = parse_scenario(&format!("{BASE}p0_db = 7\np1 = 0.3\np2 = 1e-3\n")).unwrap();
        assert_eq!(parse_scenario(&format_scenario(&s)).unwrap(), s);
    }
}

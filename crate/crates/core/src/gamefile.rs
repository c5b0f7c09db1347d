//! JSON game files.
//!
//! ```json
//! { "players": 2, "strategies": [2, 2],
//!   "payoffs": [ { "profile": [1, 1], "values": ["1", "-3/2"] }, ... ] }
//! ```
//!
//! Profiles are 1-based. Payoffs are integers or `"p/q"` strings; decimal
//! notation is rejected so every input is exact.

use crate::game::{validate_game, Game, GameError, RawGame};
use crate::rational::parse_rational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum GameFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error in {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Invalid(#[from] GameError),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct FileGame {
    players: usize,
    strategies: Vec<usize>,
    payoffs: Vec<FileEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct FileEntry {
    profile: Vec<usize>,
    values: Vec<Value>,
}

pub fn parse_game_str(text: &str) -> Result<Game, GameFileError> {
    if text.trim().is_empty() {
        return Err(GameFileError::Syntax {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    let file: FileGame = serde_json::from_str(text).map_err(|e| GameFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut payoffs = Vec::with_capacity(file.payoffs.len());
    for (i, entry) in file.payoffs.iter().enumerate() {
        let mut values = Vec::with_capacity(entry.values.len());
        for (j, v) in entry.values.iter().enumerate() {
            let field = || format!("payoffs[{i}].values[{j}]");
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => {
                    return Err(GameFileError::Field {
                        field: field(),
                        message: format!("{other} is not an integer or \"p/q\" string"),
                    })
                }
            };
            if let Err(e) = parse_rational(&s) {
                return Err(GameFileError::Field {
                    field: field(),
                    message: e.to_string(),
                });
            }
            values.push(s);
        }
        payoffs.push((entry.profile.clone(), values));
    }
    let raw = RawGame {
        players: file.players,
        strategies: file.strategies,
        payoffs,
        labels: file.labels,
    };
    Ok(validate_game(&raw)?)
}

pub fn parse_game_file(path: &Path) -> Result<Game, GameFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| GameFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_game_str(&text)
}

/// Canonical JSON text of a game, profiles in table order.
pub fn render_game(g: &Game) -> String {
    let raw = g.to_raw();
    let file = FileGame {
        players: raw.players,
        strategies: raw.strategies,
        payoffs: raw
            .payoffs
            .into_iter()
            .map(|(profile, values)| FileEntry {
                profile,
                values: values.into_iter().map(Value::String).collect(),
            })
            .collect(),
        labels: raw.labels,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::payoff_map;
    use crate::rational::qf;

    const SMALL: &str = r#"{
        "players": 2, "strategies": [2, 2],
        "payoffs": [
            {"profile": [1, 1], "values": ["1", -1]},
            {"profile": [1, 2], "values": ["-1", "1"]},
            {"profile": [2, 1], "values": ["-1", "1"]},
            {"profile": [2, 2], "values": ["3/2", "-1"]}
        ]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let g = parse_game_str(SMALL).unwrap();
        assert_eq!(g.payoff(&[1, 1])[0], qf(3, 2));
        let again = parse_game_str(&render_game(&g)).unwrap();
        assert_eq!(payoff_map(&g), payoff_map(&again));
    }

    #[test]
    fn rejects_decimals_and_empty_input() {
        let bad = SMALL.replace("\"3/2\"", "\"1.5\"");
        match parse_game_str(&bad) {
            Err(GameFileError::Field { field, .. }) => assert_eq!(field, "payoffs[3].values[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = SMALL.replace("\"3/2\"", "1.5");
        assert!(matches!(parse_game_str(&bad), Err(GameFileError::Field { .. })));
        assert!(matches!(parse_game_str(""), Err(GameFileError::Syntax { .. })));
        assert!(matches!(parse_game_str("{\"players\": 2,"), Err(GameFileError::Syntax { .. })));
    }

    #[test]
    fn validation_errors_surface() {
        let bad = SMALL.replace("{\"profile\": [2, 2], \"values\": [\"3/2\", \"-1\"]}", "{\"profile\": [1, 1], \"values\": [\"0\", \"0\"]}");
        assert!(matches!(
            parse_game_str(&bad),
            Err(GameFileError::Invalid(GameError::DuplicateProfile(_)))
        ));
    }
}

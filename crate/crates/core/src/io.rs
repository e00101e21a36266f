//! JSON instance files.
//!
//! ```json
//! {
//!   "players": 2,
//!   "weights": [1.0, 1.0],
//!   "game": { "kind": "normal-form", "strategy_counts": [2, 2], "payoffs": [[1.0, 1.0], ...] },
//!   "start": [0, 0],
//!   "target": [1, 1],
//!   "certificate": { "optimum_weight": 1.0, "note": "..." }
//! }
//! ```
//!
//! The canonical form is pretty-printed JSON with a trailing newline; parsing
//! and re-serializing a canonical file reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::any_game::AnyGame;
use crate::congestion::{CongestionGame, SingletonCongestionGame};
use crate::coordination::CoordinationGame;
use crate::error::{DcsError, Result};
use crate::gadgets::{Certificate, GadgetSpec};
use crate::game::{Game, Profile, TableGame};
use crate::instance::DcsInstance;
use crate::tree::GraphicalGame;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub players: usize,
    pub weights: Vec<f64>,
    pub game: GamePayload,
    pub start: Vec<usize>,
    pub target: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GamePayload {
    /// `payoffs[profile][player]`, profiles row-major with the last player
    /// fastest.
    NormalForm {
        strategy_counts: Vec<usize>,
        payoffs: Vec<Vec<f64>>,
    },
    Graphical(GraphicalGame),
    Congestion(CongestionGame),
    SingletonCongestion {
        allowed: Vec<Vec<usize>>,
        costs: Vec<Vec<f64>>,
    },
    Coordination(CoordinationGame),
    Gadget(GadgetSpec),
}

/// A parsed instance and the certificate stored with it, if any.
#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub instance: DcsInstance<AnyGame>,
    pub certificate: Option<Certificate>,
}

impl GamePayload {
    fn into_game(self) -> Result<AnyGame> {
        Ok(match self {
            GamePayload::NormalForm {
                strategy_counts,
                payoffs,
            } => TableGame::new(strategy_counts, payoffs)?.into(),
            GamePayload::Graphical(g) => g.into(),
            GamePayload::Congestion(g) => g.into(),
            GamePayload::SingletonCongestion { allowed, costs } => {
                SingletonCongestionGame::new(allowed, costs)?.into()
            }
            GamePayload::Coordination(g) => g.into(),
            GamePayload::Gadget(spec) => spec.to_game()?.into(),
        })
    }

    fn from_game(game: &AnyGame) -> Self {
        match game {
            AnyGame::NormalForm(t) => GamePayload::NormalForm {
                strategy_counts: t.strategy_counts().to_vec(),
                payoffs: t.rows(),
            },
            AnyGame::Graphical(g) => GamePayload::Graphical(g.clone()),
            AnyGame::Congestion(g) => GamePayload::Congestion(g.clone()),
            AnyGame::SingletonCongestion(g) => GamePayload::SingletonCongestion {
                allowed: g.allowed().to_vec(),
                costs: g.costs().to_vec(),
            },
            AnyGame::Coordination(g) => GamePayload::Coordination(g.clone()),
            AnyGame::Gadget(g) => GamePayload::Gadget(GadgetSpec::from(g)),
        }
    }
}

fn schema_error(path: String, message: String) -> DcsError {
    DcsError::Schema {
        path: if path.is_empty() || path == "." {
            "<root>".into()
        } else {
            path
        },
        message,
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(bytes: &[u8]) -> Result<LoadedInstance> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema_error(path, e.into_inner().to_string())
    })?;
    let game = file.game.into_game().map_err(|e| match e {
        DcsError::InvalidInput(m) => schema_error("game".into(), m),
        other => other,
    })?;
    if game.n_players() != file.players {
        return Err(schema_error(
            "players".into(),
            format!(
                "file declares {} players, the game has {}",
                file.players,
                game.n_players()
            ),
        ));
    }
    let instance = DcsInstance::new(
        game,
        Profile(file.start),
        Profile(file.target),
        file.weights,
    )?;
    Ok(LoadedInstance {
        instance,
        certificate: file.certificate,
    })
}

/// Canonical bytes for an instance.
pub fn serialize_instance(
    instance: &DcsInstance<AnyGame>,
    certificate: Option<&Certificate>,
) -> Vec<u8> {
    let file = InstanceFile {
        players: instance.n(),
        weights: instance.weights().to_vec(),
        game: GamePayload::from_game(instance.game()),
        start: instance.start().0.clone(),
        target: instance.target().0.clone(),
        certificate: certificate.cloned(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("instance files always serialize");
    out.push(b'\n');
    out
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<LoadedInstance> {
    let path = path.as_ref();
    let bytes = fs::read(path)
        .map_err(|e| DcsError::invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&bytes)
}

pub fn write_instance(
    path: impl AsRef<Path>,
    instance: &DcsInstance<AnyGame>,
    certificate: Option<&Certificate>,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, serialize_instance(instance, certificate))
        .map_err(|e| DcsError::invalid(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gadget_threshold;
    use crate::random::{random_instance, RandomKind};

    #[test]
    fn empty_payload_is_a_schema_error() {
        assert!(matches!(parse_instance(b""), Err(DcsError::Schema { .. })));
        assert!(matches!(
            parse_instance(b"{}"),
            Err(DcsError::Schema { .. })
        ));
    }

    #[test]
    fn unknown_fields_are_rejected_with_a_path() {
        let c = gadget_threshold(4, 2).unwrap();
        let text = String::from_utf8(serialize_instance(
            &c.instance.map_game(AnyGame::from).unwrap(),
            None,
        ))
        .unwrap();
        let bad = text.replacen("\"p\": 2", "\"p\": 2, \"q\": 1", 1);
        match parse_instance(bad.as_bytes()) {
            Err(DcsError::Schema { path, message }) => {
                assert!(path.contains("game"), "{path}");
                assert!(message.contains('q'), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let bad = text.replacen("\"players\": 4", "\"players\": 4, \"extra\": true", 1);
        assert!(matches!(
            parse_instance(bad.as_bytes()),
            Err(DcsError::Schema { .. })
        ));
    }

    #[test]
    fn gadget_file_matches_generator() {
        let text = br#"{"players": 4, "weights": [1, 1, 1, 1], "game": {"kind": "gadget", "name": "threshold", "n": 4, "p": 2}, "start": [0, 0, 0, 0], "target": [1, 1, 1, 1]}"#;
        let loaded = parse_instance(text).unwrap();
        let generated = gadget_threshold(4, 2).unwrap().instance;
        assert_eq!(
            loaded.instance.game(),
            &AnyGame::from(generated.game().clone())
        );
        assert_eq!(loaded.instance.start(), generated.start());
        assert_eq!(loaded.instance.target(), generated.target());
    }

    #[test]
    fn canonical_round_trip() {
        for kind in RandomKind::ALL {
            let inst = random_instance(kind, 4, 2, 3).unwrap();
            let bytes = serialize_instance(&inst, None);
            let again = parse_instance(&bytes).unwrap();
            assert_eq!(again.instance.game(), inst.game(), "{kind}");
            assert_eq!(serialize_instance(&again.instance, None), bytes, "{kind}");
        }
    }

    #[test]
    fn out_of_range_and_mismatch() {
        let text = br#"{"players": 3, "weights": [1, 1, 1, 1], "game": {"kind": "gadget", "name": "threshold", "n": 4, "p": 2}, "start": [0, 0, 0, 0], "target": [1, 1, 1, 1]}"#;
        assert!(matches!(parse_instance(text), Err(DcsError::Schema { .. })));
        let text = br#"{"players": 4, "weights": [1, 1, 1, 1], "game": {"kind": "gadget", "name": "threshold", "n": 4, "p": 2}, "start": [0, 0, 0, 2], "target": [1, 1, 1, 1]}"#;
        assert!(parse_instance(text).is_err());
    }
}

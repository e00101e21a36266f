//! Minimum-weight direct control sets of strategic games.
//!
//! Given a game, a start equilibrium `s` and a target equilibrium `d`, a
//! direct control set is a set of players who, by playing `d` while everyone
//! else still plays `s`, make `d` a best response for every other player.
//! The crate provides the definitional checks, exact and approximate solvers
//! for general games (behind a utility oracle), class-specific algorithms for
//! tree graphical games, singleton and symmetric congestion games and binary
//! coordination games, and generators for reduction gadgets and random
//! instances.

pub mod any_game;
pub mod bench;
pub mod congestion;
pub mod coordination;
pub mod error;
pub mod gadgets;
pub mod game;
pub mod graph;
pub mod instance;
pub mod io;
pub mod nash;
pub mod random;
pub mod solvers;
pub mod tree;

pub use any_game::AnyGame;
pub use error::{DcsError, Result};
pub use game::{Game, PlayerSet, Profile, TableGame};
pub use graph::Graph;
pub use instance::{DcsInstance, Method, MinimalityMode, SolveReport, SolveStats};

//! Direct control set instances and the definitional checks: intermediate
//! profiles, feasibility (global and per player), minimality and
//! order-independence.

use std::time::Duration;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DcsError, Result};
use crate::game::{
    is_best_response, is_nash_unchecked, validate_profile, Game, PlayerSet, Profile,
};

/// Default cap on `|N \ A|` for [`DcsInstance::is_order_independent_dcs`].
pub const DEFAULT_ORDER_INDEPENDENCE_CAP: usize = 22;

/// Default cap on `2^|A|` subsets for exact minimality checks.
pub const DEFAULT_MINIMALITY_BUDGET: u128 = 1 << 22;

/// One direct control set problem: a game, start profile `s`, target
/// equilibrium `d` and nonnegative player weights.
#[derive(Clone, Debug)]
pub struct DcsInstance<G> {
    game: G,
    start: Profile,
    target: Profile,
    weights: Vec<f64>,
}

impl<G: Game> DcsInstance<G> {
    /// Validates the instance. The target must be a Nash equilibrium; a start
    /// profile that is not one only produces a warning.
    pub fn new(game: G, start: Profile, target: Profile, weights: Vec<f64>) -> Result<Self> {
        let n = game.n_players();
        if n == 0 {
            return Err(DcsError::invalid("a game needs at least one player"));
        }
        validate_profile(&game, &start)?;
        validate_profile(&game, &target)?;
        if weights.len() != n {
            return Err(DcsError::invalid(format!(
                "{} weights for {n} players",
                weights.len()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(DcsError::invalid(format!(
                "weight of player {i} is {w}, weights must be finite and nonnegative"
            )));
        }
        if !is_nash_unchecked(&game, &target) {
            return Err(DcsError::PreconditionViolated(format!(
                "target profile {target} is not a Nash equilibrium"
            )));
        }
        if !is_nash_unchecked(&game, &start) {
            log::warn!("start profile {start} is not a Nash equilibrium");
        }
        Ok(DcsInstance {
            game,
            start,
            target,
            weights,
        })
    }

    /// Same as [`DcsInstance::new`] with every weight equal to one.
    pub fn unit(game: G, start: Profile, target: Profile) -> Result<Self> {
        let n = game.n_players();
        Self::new(game, start, target, vec![1.0; n])
    }

    pub fn game(&self) -> &G {
        &self.game
    }

    pub fn start(&self) -> &Profile {
        &self.start
    }

    pub fn target(&self) -> &Profile {
        &self.target
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.game.n_players()
    }

    pub fn into_parts(self) -> (G, Profile, Profile, Vec<f64>) {
        (self.game, self.start, self.target, self.weights)
    }

    /// Swaps the game for another representation of the same game (for
    /// example a structured game wrapped into [`crate::AnyGame`]).
    pub fn map_game<H: Game>(self, f: impl FnOnce(G) -> H) -> Result<DcsInstance<H>> {
        DcsInstance::new(f(self.game), self.start, self.target, self.weights)
    }

    pub fn with_weights(self, weights: Vec<f64>) -> Result<Self> {
        DcsInstance::new(self.game, self.start, self.target, weights)
    }

    pub fn with_start(self, start: Profile) -> Result<Self> {
        DcsInstance::new(self.game, start, self.target, self.weights)
    }

    fn check_set(&self, set: &PlayerSet) -> Result<()> {
        match set.iter().find(|&p| p >= self.n()) {
            Some(p) => Err(DcsError::invalid(format!(
                "player {p} out of range for {} players",
                self.n()
            ))),
            None => Ok(()),
        }
    }

    pub fn player_set(&self, members: impl IntoIterator<Item = usize>) -> Result<PlayerSet> {
        PlayerSet::from_members(members, &self.weights)
    }

    /// `sd(A)`: members of `A` play the target, everyone else the start.
    pub fn intermediate_profile(&self, set: &PlayerSet) -> Result<Profile> {
        self.check_set(set)?;
        Ok(Profile(intermediate(
            &self.start,
            &self.target,
            &set.membership(self.n()),
        )))
    }

    /// Whether every player outside `set` has its target strategy among its
    /// best responses in `sd(set)`.
    pub fn is_direct_control_set(&self, set: &PlayerSet) -> Result<bool> {
        self.check_set(set)?;
        Ok(is_dcs(
            &self.game,
            &self.start,
            &self.target,
            &set.membership(self.n()),
        ))
    }

    /// Whether `set` brings `player` from `s` to `d`: either the player is a
    /// member, or the target is among its best responses in `sd(set)`.
    pub fn is_dcs_for_player(&self, set: &PlayerSet, player: usize) -> Result<bool> {
        self.check_set(set)?;
        crate::game::validate_player(&self.game, player)?;
        if set.contains(player) {
            return Ok(true);
        }
        let mut profile = intermediate(&self.start, &self.target, &set.membership(self.n()));
        Ok(is_best_response(
            &self.game,
            &mut profile,
            player,
            self.target[player],
        ))
    }

    /// Whether `set` is a direct control set no proper subset of which is one.
    pub fn is_minimal_dcs(&self, set: &PlayerSet, mode: MinimalityMode) -> Result<bool> {
        if !self.is_direct_control_set(set)? {
            return Err(DcsError::PreconditionViolated(format!(
                "{set} is not a direct control set"
            )));
        }
        let n = self.n();
        let members = set.members();
        let base = set.membership(n);
        match mode {
            MinimalityMode::SingleRemoval => Ok(members.iter().all(|&m| {
                let mut inside = base.clone();
                inside[m] = false;
                !is_dcs(&self.game, &self.start, &self.target, &inside)
            })),
            MinimalityMode::Exact { budget } => {
                let needed = 1u128.checked_shl(members.len() as u32).unwrap_or(u128::MAX);
                if needed > budget {
                    return Err(DcsError::budget("exact minimality", needed, budget));
                }
                // Proper subsets in decreasing size.
                for size in (0..members.len()).rev() {
                    for keep in members.iter().copied().combinations(size) {
                        let mut inside = vec![false; n];
                        for m in keep {
                            inside[m] = true;
                        }
                        if is_dcs(&self.game, &self.start, &self.target, &inside) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    /// Whether `set` stays a direct control set no matter which subset `Y` of
    /// the outside players has already switched to the target.
    ///
    /// Exhaustive over the `2^|N \ A|` choices of `Y`; refuses when
    /// `|N \ A| > cap`.
    pub fn is_order_independent_dcs(&self, set: &PlayerSet, cap: usize) -> Result<bool> {
        self.check_set(set)?;
        let inside = set.membership(self.n());
        let outside: Vec<usize> = (0..self.n()).filter(|&i| !inside[i]).collect();
        if outside.len() > cap || outside.len() >= 64 {
            return Err(DcsError::budget(
                format!("order-independence over 2^{} switch subsets", outside.len()),
                1u128.checked_shl(outside.len() as u32).unwrap_or(u128::MAX),
                1u128 << cap.min(127),
            ));
        }
        let total = 1u64 << outside.len();
        Ok((0..total).into_par_iter().all(|ymask| {
            let mut switched = inside.clone();
            for (bit, &p) in outside.iter().enumerate() {
                if ymask >> bit & 1 == 1 {
                    switched[p] = true;
                }
            }
            let mut profile = intermediate(&self.start, &self.target, &switched);
            outside
                .iter()
                .filter(|&&p| !switched[p])
                .all(|&p| is_best_response(&self.game, &mut profile, p, self.target[p]))
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalityMode {
    /// Only single-member removals; sound when feasibility is monotone.
    SingleRemoval,
    /// Every proper subset, up to `budget` subsets.
    Exact { budget: u128 },
}

pub(crate) fn intermediate(start: &[usize], target: &[usize], inside: &[bool]) -> Vec<usize> {
    start
        .iter()
        .zip(target)
        .zip(inside)
        .map(|((&s, &d), &a)| if a { d } else { s })
        .collect()
}

/// Feasibility of a membership vector, evaluated against any game view (used
/// by the solvers with a counting wrapper).
pub(crate) fn is_dcs<H: Game + ?Sized>(
    game: &H,
    start: &[usize],
    target: &[usize],
    inside: &[bool],
) -> bool {
    let mut profile = intermediate(start, target, inside);
    (0..inside.len()).all(|i| inside[i] || is_best_response(game, &mut profile, i, target[i]))
}

/// Players outside `inside` whose target is not a best response in `sd`.
pub(crate) fn uncontrolled<H: Game + ?Sized>(
    game: &H,
    start: &[usize],
    target: &[usize],
    inside: &[bool],
) -> Vec<usize> {
    let mut profile = intermediate(start, target, inside);
    (0..inside.len())
        .filter(|&i| !inside[i] && !is_best_response(game, &mut profile, i, target[i]))
        .collect()
}

pub(crate) fn mask_membership(mask: u128, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Which algorithm produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    Incremental,
    LocalRatio,
    SingletonHittingGreedy,
    SingletonHittingExact,
    TreeDp,
    SingletonCongestion,
    SymmetricDecreasing,
    CoordinationGreedy,
    CoordinationExact,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SolveStats {
    pub oracle_calls: u64,
    pub subsets_examined: u64,
    #[serde(rename = "millis", serialize_with = "as_millis")]
    pub wall_time: Duration,
    /// Whether a search that may be truncated covered its whole space.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
}

/// The outcome of a solver run, with feasibility re-verified on the
/// instance's own oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub solution: PlayerSet,
    pub weight: f64,
    pub feasible: bool,
    pub method: Method,
    pub stats: SolveStats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SolveReport {
    pub fn certify<G: Game>(
        instance: &DcsInstance<G>,
        solution: PlayerSet,
        method: Method,
        stats: SolveStats,
    ) -> Result<Self> {
        let feasible = instance.is_direct_control_set(&solution)?;
        Ok(SolveReport {
            weight: solution.weight(),
            solution,
            feasible,
            method,
            stats,
            notes: Vec::new(),
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

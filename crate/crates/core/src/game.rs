//! Pure-strategy games behind a utility oracle, best responses, and Nash /
//! k-strong Nash verification.
//!
//! Strategies are identified by index. A [`Game`] only has to answer
//! `utility(profile, player)` for every profile of the product space; the
//! structured classes (graphical, congestion, coordination, gadgets) implement
//! the same trait with their closed-form utilities.

use std::collections::BTreeSet;
use std::ops::Deref;
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{DcsError, Result};

/// Absolute tolerance used when comparing utilities.
///
/// All shipped generators produce integer-valued utilities, for which every
/// comparison is exact.
pub const TOL: f64 = 1e-9;

/// Default cap on the number of joint deviations [`is_k_strong`] may examine.
pub const DEFAULT_COALITION_BUDGET: u128 = 10_000_000;

/// Which family a game belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureTag {
    NormalFormTable,
    Graphical,
    Congestion,
    SingletonCongestion,
    Coordination,
    BuiltinGadget,
}

/// An n-player game in strategic form, represented by a utility oracle.
///
/// Implementations must be deterministic and safe to call concurrently.
/// `utility` is unchecked: callers go through [`utility`] (the free function)
/// when the profile has not been validated yet.
pub trait Game: Send + Sync {
    fn n_players(&self) -> usize;

    fn strategy_count(&self, player: usize) -> usize;

    fn utility(&self, profile: &[usize], player: usize) -> f64;

    fn structure(&self) -> StructureTag;

    /// Closed-form influence sets `N(i)` (sorted, containing `i`) when the
    /// class knows them.
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        None
    }
}

impl<G: Game + ?Sized> Game for &G {
    fn n_players(&self) -> usize {
        (**self).n_players()
    }
    fn strategy_count(&self, player: usize) -> usize {
        (**self).strategy_count(player)
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        (**self).utility(profile, player)
    }
    fn structure(&self) -> StructureTag {
        (**self).structure()
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        (**self).influence_sets()
    }
}

impl<G: Game + ?Sized> Game for Box<G> {
    fn n_players(&self) -> usize {
        (**self).n_players()
    }
    fn strategy_count(&self, player: usize) -> usize {
        (**self).strategy_count(player)
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        (**self).utility(profile, player)
    }
    fn structure(&self) -> StructureTag {
        (**self).structure()
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        (**self).influence_sets()
    }
}

/// One strategy index per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn new(choices: Vec<usize>) -> Self {
        Profile(choices)
    }

    /// Every player plays the same strategy index.
    pub fn uniform(n: usize, strategy: usize) -> Self {
        Profile(vec![strategy; n])
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Profile {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Sum of `weights` over `members`, accumulated in increasing index order so
/// the same set always yields the same floating-point value.
pub fn set_weight<'a>(members: impl IntoIterator<Item = &'a usize>, weights: &[f64]) -> f64 {
    let mut sorted: Vec<usize> = members.into_iter().copied().collect();
    sorted.sort_unstable();
    sorted.iter().fold(0.0, |acc, &i| acc + weights[i])
}

/// A subset of players together with its total weight.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlayerSet {
    members: BTreeSet<usize>,
    weight: f64,
}

impl PlayerSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_members(members: impl IntoIterator<Item = usize>, weights: &[f64]) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= weights.len()) {
            return Err(DcsError::invalid(format!(
                "player {bad} out of range for {} players",
                weights.len()
            )));
        }
        let weight = set_weight(&members, weights);
        Ok(PlayerSet { members, weight })
    }

    /// Members of a boolean membership vector.
    pub fn from_membership(inside: &[bool], weights: &[f64]) -> Self {
        let members: BTreeSet<usize> = inside
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        let weight = set_weight(&members, weights);
        PlayerSet { members, weight }
    }

    pub fn insert(&mut self, player: usize, weights: &[f64]) -> bool {
        let added = self.members.insert(player);
        self.weight = set_weight(&self.members, weights);
        added
    }

    pub fn remove(&mut self, player: usize, weights: &[f64]) -> bool {
        let removed = self.members.remove(&player);
        self.weight = set_weight(&self.members, weights);
        removed
    }

    pub fn contains(&self, player: usize) -> bool {
        self.members.contains(&player)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut inside = vec![false; n];
        for &m in &self.members {
            inside[m] = true;
        }
        inside
    }
}

impl std::fmt::Display for PlayerSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}

pub fn validate_player<G: Game + ?Sized>(game: &G, player: usize) -> Result<()> {
    if player >= game.n_players() {
        return Err(DcsError::invalid(format!(
            "player {player} out of range for {} players",
            game.n_players()
        )));
    }
    Ok(())
}

pub fn validate_profile<G: Game + ?Sized>(game: &G, profile: &[usize]) -> Result<()> {
    if profile.len() != game.n_players() {
        return Err(DcsError::invalid(format!(
            "profile has {} entries, game has {} players",
            profile.len(),
            game.n_players()
        )));
    }
    for (i, &c) in profile.iter().enumerate() {
        if c >= game.strategy_count(i) {
            return Err(DcsError::invalid(format!(
                "player {i} plays strategy {c} but has only {}",
                game.strategy_count(i)
            )));
        }
    }
    Ok(())
}

/// `u_i(profile)`, validating the inputs first.
pub fn utility<G: Game + ?Sized>(game: &G, profile: &[usize], player: usize) -> Result<f64> {
    validate_profile(game, profile)?;
    validate_player(game, player)?;
    Ok(game.utility(profile, player))
}

/// Utilities of every strategy of `player` against `profile_{-player}`.
///
/// `scratch` is restored before returning.
pub(crate) fn deviation_values<G: Game + ?Sized>(
    game: &G,
    scratch: &mut [usize],
    player: usize,
) -> Vec<f64> {
    let own = scratch[player];
    let values = (0..game.strategy_count(player))
        .map(|t| {
            scratch[player] = t;
            game.utility(scratch, player)
        })
        .collect();
    scratch[player] = own;
    values
}

/// Whether `strategy` is a best response of `player` against `scratch_{-player}`.
pub(crate) fn is_best_response<G: Game + ?Sized>(
    game: &G,
    scratch: &mut [usize],
    player: usize,
    strategy: usize,
) -> bool {
    let values = deviation_values(game, scratch, player);
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values[strategy] >= best - TOL
}

pub(crate) fn best_response_set(values: &[f64]) -> Vec<usize> {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .enumerate()
        .filter_map(|(t, &v)| (v >= best - TOL).then_some(t))
        .collect()
}

/// All strategies of `player` maximizing its utility against `profile_{-player}`.
pub fn best_responses<G: Game + ?Sized>(
    game: &G,
    profile: &[usize],
    player: usize,
) -> Result<Vec<usize>> {
    validate_profile(game, profile)?;
    validate_player(game, player)?;
    let mut scratch = profile.to_vec();
    Ok(best_response_set(&deviation_values(
        game,
        &mut scratch,
        player,
    )))
}

pub(crate) fn is_nash_unchecked<G: Game + ?Sized>(game: &G, profile: &[usize]) -> bool {
    let mut scratch = profile.to_vec();
    (0..game.n_players()).all(|i| is_best_response(game, &mut scratch, i, profile[i]))
}

pub fn is_nash<G: Game + ?Sized>(game: &G, profile: &[usize]) -> Result<bool> {
    validate_profile(game, profile)?;
    Ok(is_nash_unchecked(game, profile))
}

/// Number of joint deviations over all coalitions of size `1..=k`.
fn coalition_work(counts: &[usize], k: usize) -> u128 {
    // Elementary symmetric sums of the strategy counts.
    let mut e = vec![0u128; k + 1];
    e[0] = 1;
    for &c in counts {
        for size in (1..=k).rev() {
            e[size] = e[size].saturating_add(e[size - 1].saturating_mul(c as u128));
        }
    }
    e[1..].iter().fold(0u128, |acc, &x| acc.saturating_add(x))
}

/// Whether no coalition of at most `k` players has a joint deviation in which
/// no member loses and some member strictly gains.
///
/// A profile that is not a Nash equilibrium is not k-strong for any `k >= 1`.
/// Coalitions are scanned in increasing size and the scan stops at the first
/// profitable deviation.
pub fn is_k_strong<G: Game + ?Sized>(
    game: &G,
    profile: &[usize],
    k: usize,
    budget: u128,
) -> Result<bool> {
    validate_profile(game, profile)?;
    let n = game.n_players();
    if k == 0 || k > n {
        return Err(DcsError::invalid(format!("k = {k} must lie in 1..={n}")));
    }
    let counts: Vec<usize> = (0..n).map(|i| game.strategy_count(i)).collect();
    let work = coalition_work(&counts, k);
    if work > budget {
        return Err(DcsError::budget(
            format!("{k}-strong verification"),
            work,
            budget,
        ));
    }
    if !is_nash_unchecked(game, profile) {
        return Ok(false);
    }
    let base: Vec<f64> = (0..n).map(|i| game.utility(profile, i)).collect();
    let mut scratch = profile.to_vec();
    for size in 1..=k {
        for coalition in (0..n).combinations(size) {
            if has_profitable_deviation(game, profile, &base, &coalition, &mut scratch) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn has_profitable_deviation<G: Game + ?Sized>(
    game: &G,
    profile: &[usize],
    base: &[f64],
    coalition: &[usize],
    scratch: &mut [usize],
) -> bool {
    // Odometer over the coalition's joint strategies.
    let mut digits = vec![0usize; coalition.len()];
    let found = 'outer: loop {
        for (&p, &d) in coalition.iter().zip(&digits) {
            scratch[p] = d;
        }
        let moved = coalition.iter().any(|&p| scratch[p] != profile[p]);
        if moved {
            let mut someone_gains = false;
            let nobody_loses = coalition.iter().all(|&p| {
                let u = game.utility(scratch, p);
                if u > base[p] + TOL {
                    someone_gains = true;
                }
                u >= base[p] - TOL
            });
            if nobody_loses && someone_gains {
                break 'outer true;
            }
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                break 'outer false;
            }
            digits[pos] += 1;
            if digits[pos] < game.strategy_count(coalition[pos]) {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    };
    for &p in coalition {
        scratch[p] = profile[p];
    }
    found
}

/// Largest `k <= k_max` for which the profile is k-strong (0 when it is not
/// even a Nash equilibrium).
pub fn strength<G: Game + ?Sized>(
    game: &G,
    profile: &[usize],
    k_max: usize,
    budget: u128,
) -> Result<usize> {
    for k in 1..=k_max {
        if !is_k_strong(game, profile, k, budget)? {
            return Ok(k - 1);
        }
    }
    Ok(k_max)
}

/// A normal-form game stored as a full payoff table.
///
/// Profiles are laid out row-major: the last player's strategy varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct TableGame {
    strategy_counts: Vec<usize>,
    payoffs: Vec<f64>,
}

/// Largest profile space a full table may describe.
pub const MAX_TABLE_PROFILES: usize = 1_000_000;

impl TableGame {
    /// `rows[profile_index][player]` in row-major profile order.
    pub fn new(strategy_counts: Vec<usize>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = strategy_counts.len();
        if n == 0 {
            return Err(DcsError::invalid("a game needs at least one player"));
        }
        if strategy_counts.contains(&0) {
            return Err(DcsError::invalid(
                "every player needs at least one strategy",
            ));
        }
        let size = profile_space(&strategy_counts)
            .filter(|&s| s <= MAX_TABLE_PROFILES as u128)
            .ok_or_else(|| {
                DcsError::invalid(format!(
                    "full payoff tables are limited to {MAX_TABLE_PROFILES} profiles"
                ))
            })? as usize;
        if rows.len() != size {
            return Err(DcsError::invalid(format!(
                "payoff table has {} rows, expected {size}",
                rows.len()
            )));
        }
        let mut payoffs = Vec::with_capacity(size * n);
        for (idx, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(DcsError::invalid(format!(
                    "payoff row {idx} has {} entries, expected {n}",
                    row.len()
                )));
            }
            payoffs.extend(row);
        }
        Ok(TableGame {
            strategy_counts,
            payoffs,
        })
    }

    /// Tabulates any game whose profile space fits in a table.
    pub fn from_game<G: Game + ?Sized>(game: &G) -> Result<Self> {
        let counts: Vec<usize> = (0..game.n_players())
            .map(|i| game.strategy_count(i))
            .collect();
        let rows = ProfileIter::new(counts.clone())
            .map(|p| (0..counts.len()).map(|i| game.utility(&p, i)).collect())
            .take(MAX_TABLE_PROFILES + 1)
            .collect();
        TableGame::new(counts, rows)
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.payoffs
            .chunks(self.strategy_counts.len())
            .map(|c| c.to_vec())
            .collect()
    }

    fn index(&self, profile: &[usize]) -> usize {
        profile
            .iter()
            .zip(&self.strategy_counts)
            .fold(0, |acc, (&c, &k)| acc * k + c)
    }
}

impl Game for TableGame {
    fn n_players(&self) -> usize {
        self.strategy_counts.len()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.strategy_counts[player]
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        self.payoffs[self.index(profile) * self.strategy_counts.len() + player]
    }
    fn structure(&self) -> StructureTag {
        StructureTag::NormalFormTable
    }
}

/// Size of the product strategy space, `None` on overflow.
pub fn profile_space(counts: &[usize]) -> Option<u128> {
    counts
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
}

/// Iterates the full product space in row-major order.
#[derive(Clone, Debug)]
pub struct ProfileIter {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(counts: Vec<usize>) -> Self {
        let next = (!counts.contains(&0)).then(|| vec![0; counts.len()]);
        ProfileIter { counts, next }
    }

    pub fn for_game<G: Game + ?Sized>(game: &G) -> Self {
        Self::new(
            (0..game.n_players())
                .map(|i| game.strategy_count(i))
                .collect(),
        )
    }
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.counts[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Wraps a game and counts oracle calls.
#[derive(Debug)]
pub struct CountingGame<G> {
    inner: G,
    calls: AtomicU64,
}

impl<G: Game> CountingGame<G> {
    pub fn new(inner: G) -> Self {
        CountingGame {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<G: Game> Game for CountingGame<G> {
    fn n_players(&self) -> usize {
        self.inner.n_players()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.inner.strategy_count(player)
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.utility(profile, player)
    }
    fn structure(&self) -> StructureTag {
        self.inner.structure()
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        self.inner.influence_sets()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The 2x2 coordination game: (T,L)=(1,1), (B,R)=(2,2), zeros elsewhere.
    pub(crate) fn two_by_two() -> TableGame {
        TableGame::new(
            vec![2, 2],
            vec![
                vec![1.0, 1.0],
                vec![0.0, 0.0],
                vec![0.0, 0.0],
                vec![2.0, 2.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn utility_reads_the_table() {
        let g = two_by_two();
        assert_eq!(utility(&g, &[1, 1], 0).unwrap(), 2.0);
        assert_eq!(utility(&g, &[0, 0], 1).unwrap(), 1.0);
    }

    #[test]
    fn utility_rejects_bad_input() {
        let g = two_by_two();
        assert!(matches!(
            utility(&g, &[1, 1], 2),
            Err(DcsError::InvalidInput(_))
        ));
        assert!(matches!(
            utility(&g, &[1], 0),
            Err(DcsError::InvalidInput(_))
        ));
        assert!(matches!(
            utility(&g, &[2, 0], 0),
            Err(DcsError::InvalidInput(_))
        ));
    }

    #[test]
    fn constant_sum_utilities() {
        let g = TableGame::new(
            vec![2, 2],
            vec![
                vec![3.0, 2.0],
                vec![1.0, 4.0],
                vec![5.0, 0.0],
                vec![2.5, 2.5],
            ],
        )
        .unwrap();
        for p in ProfileIter::for_game(&g) {
            assert_eq!(g.utility(&p, 0) + g.utility(&p, 1), 5.0);
        }
    }

    #[test]
    fn best_responses_of_two_by_two() {
        let g = two_by_two();
        assert_eq!(best_responses(&g, &[0, 0], 0).unwrap(), vec![0]);
        assert_eq!(best_responses(&g, &[0, 1], 0).unwrap(), vec![1]);
    }

    #[test]
    fn single_strategy_player_best_response() {
        let g = TableGame::new(vec![1, 2], vec![vec![0.0, 1.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(best_responses(&g, &[0, 1], 0).unwrap(), vec![0]);
    }

    #[test]
    fn nash_checks() {
        let g = two_by_two();
        assert!(is_nash(&g, &[1, 1]).unwrap());
        assert!(is_nash(&g, &[0, 0]).unwrap());
        assert!(!is_nash(&g, &[0, 1]).unwrap());
    }

    #[test]
    fn strong_nash_of_two_by_two() {
        let g = two_by_two();
        assert!(is_k_strong(&g, &[1, 1], 2, DEFAULT_COALITION_BUDGET).unwrap());
        // (T,L) is Nash but both gain by moving to (B,R).
        assert!(is_k_strong(&g, &[0, 0], 1, DEFAULT_COALITION_BUDGET).unwrap());
        assert!(!is_k_strong(&g, &[0, 0], 2, DEFAULT_COALITION_BUDGET).unwrap());
        assert_eq!(
            strength(&g, &[1, 1], 2, DEFAULT_COALITION_BUDGET).unwrap(),
            2
        );
        assert_eq!(
            strength(&g, &[0, 1], 2, DEFAULT_COALITION_BUDGET).unwrap(),
            0
        );
    }

    #[test]
    fn one_player_strict_equilibrium_has_strength_one() {
        let g = TableGame::new(vec![2], vec![vec![1.0], vec![0.0]]).unwrap();
        assert_eq!(strength(&g, &[0], 1, DEFAULT_COALITION_BUDGET).unwrap(), 1);
    }

    #[test]
    fn coalition_budget_is_enforced() {
        let g = two_by_two();
        // Coalitions of size <= 2 over 2x2: 2 + 2 + 4 = 8 joint strategies.
        assert_eq!(coalition_work(&[2, 2], 2), 8);
        assert!(matches!(
            is_k_strong(&g, &[1, 1], 2, 7),
            Err(DcsError::BudgetExceeded { needed: 8, .. })
        ));
    }

    #[test]
    fn profile_iter_covers_space() {
        let all: Vec<_> = ProfileIter::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
    }

    #[test]
    fn player_set_weight_tracks_mutation() {
        let w = [0.1, 0.2, 0.3, 0.4];
        let mut a = PlayerSet::from_members([2, 0], &w).unwrap();
        a.insert(3, &w);
        a.remove(0, &w);
        a.insert(0, &w);
        let fresh = PlayerSet::from_members([0, 2, 3], &w).unwrap();
        assert_eq!(a.weight(), fresh.weight());
        assert!(PlayerSet::from_members([4], &w).is_err());
    }

    #[test]
    fn counting_game_counts() {
        let g = CountingGame::new(two_by_two());
        is_nash(&g, &[1, 1]).unwrap();
        assert_eq!(g.calls(), 4);
    }
}

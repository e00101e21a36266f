//! Coordination games on graphs and the reduction of binary instances to
//! weighted k-domination.
//!
//! Each player picks a colour; its utility is the colour's prestige times the
//! number of neighbours with the same colour. The target is everyone on
//! colour 0.

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DcsError, Result};
use crate::game::{set_weight, Game, PlayerSet, Profile, StructureTag, TOL};
use crate::graph::Graph;
use crate::instance::{DcsInstance, Method, SolveReport, SolveStats};
use crate::solvers::{key_cmp, mask_members, mask_weight};

/// Players whose reduction bijection is verified by enumeration on
/// construction.
pub const BIJECTION_CHECK_LIMIT: usize = 12;

/// Largest number of positive-weight vertices the exact k-domination search
/// accepts.
pub const MAX_EXACT_KDOM_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoordinationRepr", into = "CoordinationRepr")]
pub struct CoordinationGame {
    graph: Graph,
    /// `colors[i][k]` is the colour of strategy `k` of player `i`.
    colors: Vec<Vec<usize>>,
    /// Prestige per colour.
    prestige: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordinationRepr {
    graph: Graph,
    colors: Vec<Vec<usize>>,
    prestige: Vec<f64>,
}

impl TryFrom<CoordinationRepr> for CoordinationGame {
    type Error = DcsError;
    fn try_from(r: CoordinationRepr) -> Result<Self> {
        CoordinationGame::new(r.graph, r.colors, r.prestige)
    }
}

impl From<CoordinationGame> for CoordinationRepr {
    fn from(g: CoordinationGame) -> Self {
        CoordinationRepr {
            graph: g.graph,
            colors: g.colors,
            prestige: g.prestige,
        }
    }
}

impl CoordinationGame {
    pub fn new(graph: Graph, colors: Vec<Vec<usize>>, prestige: Vec<f64>) -> Result<Self> {
        if colors.len() != graph.n() || graph.n() == 0 {
            return Err(DcsError::invalid(format!(
                "{} colour lists for {} vertices",
                colors.len(),
                graph.n()
            )));
        }
        for (i, list) in colors.iter().enumerate() {
            if !list.contains(&0) {
                return Err(DcsError::invalid(format!(
                    "player {i} cannot play colour 0"
                )));
            }
            if !list.iter().all_unique() {
                return Err(DcsError::invalid(format!(
                    "player {i} lists a colour twice"
                )));
            }
            if let Some(&c) = list.iter().find(|&&c| c >= prestige.len()) {
                return Err(DcsError::invalid(format!(
                    "colour {c} of player {i} has no prestige"
                )));
            }
        }
        if prestige.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(DcsError::invalid("prestige must be finite and nonnegative"));
        }
        Ok(CoordinationGame {
            graph,
            colors,
            prestige,
        })
    }

    /// Every player chooses between colours 0 and 1 (strategy index equals
    /// colour).
    pub fn binary(graph: Graph, prestige: [f64; 2]) -> Result<Self> {
        let n = graph.n();
        CoordinationGame::new(graph, vec![vec![0, 1]; n], prestige.to_vec())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> &[Vec<usize>] {
        &self.colors
    }

    pub fn prestige(&self) -> &[f64] {
        &self.prestige
    }

    pub fn color(&self, player: usize, strategy: usize) -> usize {
        self.colors[player][strategy]
    }

    pub fn is_binary(&self) -> bool {
        self.colors.iter().all(|l| l == &[0, 1])
    }

    /// Translates colours into strategy indices.
    pub fn profile_from_colors(&self, colors: &[usize]) -> Result<Profile> {
        if colors.len() != self.colors.len() {
            return Err(DcsError::invalid("one colour per player expected"));
        }
        colors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                self.colors[i]
                    .iter()
                    .position(|x| x == c)
                    .ok_or_else(|| DcsError::invalid(format!("player {i} cannot play colour {c}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    /// The profile where everyone plays colour 0.
    pub fn all_zero(&self) -> Profile {
        self.profile_from_colors(&vec![0; self.colors.len()])
            .expect("colour 0 is always available")
    }
}

impl Game for CoordinationGame {
    fn n_players(&self) -> usize {
        self.graph.n()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.colors[player].len()
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        let c = self.colors[player][profile[player]];
        let same = self
            .graph
            .neighbors(player)
            .iter()
            .filter(|&&j| self.colors[j][profile[j]] == c)
            .count();
        self.prestige[c] * same as f64
    }
    fn structure(&self) -> StructureTag {
        StructureTag::Coordination
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        Some(
            (0..self.graph.n())
                .map(|v| self.graph.closed_neighborhood(v))
                .collect(),
        )
    }
}

/// `p(c) * |{j in N(i) : colour_j = c}|` for `c` the colour player `i`
/// plays in `profile`.
pub fn coordination_utility(
    game: &CoordinationGame,
    profile: &[usize],
    player: usize,
) -> Result<f64> {
    crate::game::utility(game, profile, player)
}

/// Smallest number of neighbours of `player` that must switch from colour 1
/// to colour 0 (from `start`) before colour 0 becomes a best response.
///
/// With `a0`, `a1` neighbours on each colour, switching `t` makes 0 a best
/// response when `p0 (a0 + t) >= p1 (a1 - t)`.
pub fn min_neighbors_for_zero(
    game: &CoordinationGame,
    start: &[usize],
    player: usize,
) -> Result<usize> {
    if !game.is_binary() {
        return Err(DcsError::Unsupported(
            "the reduction needs colours {0, 1} for everyone".into(),
        ));
    }
    crate::game::validate_profile(game, start)?;
    crate::game::validate_player(game, player)?;
    let nbrs = game.graph.neighbors(player);
    let a1 = nbrs.iter().filter(|&&j| start[j] == 1).count();
    let a0 = nbrs.len() - a1;
    let (p0, p1) = (game.prestige[0], game.prestige[1]);
    if p0 + p1 <= 0.0 {
        return Ok(0);
    }
    let t = ((p1 * a1 as f64 - p0 * a0 as f64) / (p0 + p1) - TOL).ceil();
    Ok((t.max(0.0) as usize).min(a1))
}

/// Weighted k-domination: choose vertices so that every unchosen vertex has
/// at least `k` chosen neighbours.
///
/// Vertices `0..originals` are the coordination players; the rest are
/// zero-weight padding leaves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KDomInstance {
    pub graph: Graph,
    pub weights: Vec<f64>,
    pub k: usize,
    /// `k_i` of each original vertex.
    pub requirement: Vec<usize>,
    pub originals: usize,
}

impl KDomInstance {
    pub fn is_k_dominating(&self, chosen: &[bool]) -> bool {
        (0..self.graph.n()).all(|v| {
            chosen[v]
                || self
                    .graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| chosen[u])
                    .count()
                    >= self.k
        })
    }

    /// Original vertices of a chosen set.
    pub fn back_map(&self, chosen: &PlayerSet) -> Vec<usize> {
        chosen.iter().filter(|&v| v < self.originals).collect()
    }

    /// `members` plus every padding vertex.
    pub fn with_padding(&self, members: &[usize]) -> Vec<bool> {
        let mut chosen: Vec<bool> = (0..self.graph.n()).map(|v| v >= self.originals).collect();
        for &m in members {
            chosen[m] = true;
        }
        chosen
    }

    pub fn padding_count(&self) -> usize {
        self.graph.n() - self.originals
    }
}

/// Reduces a binary coordination instance with target all-0 to weighted
/// k-domination, `k = max_i k_i`.
///
/// Edges are kept between original vertices starting on colour 1: only they
/// can add a 0-neighbour by switching. Original `i` gets `k - k_i` padding
/// leaves of weight zero, which are always chosen. Then a set `T` of players
/// is a direct control set exactly when `T` plus the padding is
/// k-dominating; for up to [`BIJECTION_CHECK_LIMIT`] players this is checked
/// over all subsets.
///
/// A player already on colour 0 that would leave it at the start is not
/// representable and is reported as unsupported.
pub fn coordination_to_kdom(instance: &DcsInstance<CoordinationGame>) -> Result<KDomInstance> {
    let game = instance.game();
    if !game.is_binary() {
        return Err(DcsError::Unsupported(
            "the reduction needs colours {0, 1} for everyone".into(),
        ));
    }
    if instance.target().iter().any(|&c| c != 0) {
        return Err(DcsError::Unsupported(
            "the reduction needs the all-0 target".into(),
        ));
    }
    let n = instance.n();
    let start = instance.start();
    let requirement: Vec<usize> = (0..n)
        .map(|i| min_neighbors_for_zero(game, start, i))
        .collect::<Result<_>>()?;
    if let Some(i) = (0..n).find(|&i| start[i] == 0 && requirement[i] > 0) {
        return Err(DcsError::Unsupported(format!(
            "player {i} starts on colour 0 but 0 is not a best response for it"
        )));
    }
    let k = requirement.iter().copied().max().unwrap_or(0);
    let mut edges: Vec<(usize, usize)> = game
        .graph
        .edges()
        .filter(|&(u, v)| start[u] == 1 && start[v] == 1)
        .collect();
    let mut weights = instance.weights().to_vec();
    let mut next = n;
    for (i, &ki) in requirement.iter().enumerate() {
        for _ in ki..k {
            edges.push((i, next));
            weights.push(0.0);
            next += 1;
        }
    }
    let kd = KDomInstance {
        graph: Graph::from_edges(next, edges)?,
        weights,
        k,
        requirement,
        originals: n,
    };
    if n <= BIJECTION_CHECK_LIMIT {
        let bad = (0u64..1 << n).into_par_iter().find_any(|&mask| {
            let members: Vec<usize> = mask_members(mask).collect();
            let set = PlayerSet::from_members(members.iter().copied(), instance.weights()).unwrap();
            instance.is_direct_control_set(&set).unwrap()
                != kd.is_k_dominating(&kd.with_padding(&members))
        });
        if let Some(mask) = bad {
            return Err(DcsError::Internal(format!(
                "k-domination reduction disagrees on {:?}",
                mask_members(mask).collect::<Vec<_>>()
            )));
        }
    }
    Ok(kd)
}

/// Unchosen vertices' missing chosen neighbours, counting a vertex itself as
/// fully satisfied once chosen.
fn deficiency(kd: &KDomInstance, chosen: &[bool], v: usize) -> usize {
    if chosen[v] {
        return 0;
    }
    let have = kd.graph.neighbors(v).iter().filter(|&&u| chosen[u]).count();
    kd.k.saturating_sub(have)
}

/// Greedy k-domination: zero-weight vertices first, then repeatedly the
/// vertex removing the most total deficiency per unit weight, then redundant
/// positive-weight vertices are dropped, heaviest first.
pub fn greedy_k_dominating(kd: &KDomInstance) -> PlayerSet {
    let n = kd.graph.n();
    let mut chosen: Vec<bool> = kd.weights.iter().map(|&w| w == 0.0).collect();
    if kd.k == 0 {
        chosen = vec![false; n];
    }
    loop {
        let def: Vec<usize> = (0..n).map(|v| deficiency(kd, &chosen, v)).collect();
        if def.iter().all(|&d| d == 0) {
            break;
        }
        let gain = |u: usize| {
            def[u]
                + kd.graph
                    .neighbors(u)
                    .iter()
                    .filter(|&&v| def[v] > 0)
                    .count()
        };
        let best = (0..n)
            .filter(|&u| !chosen[u] && gain(u) > 0)
            .min_by(|&a, &b| {
                let ra = kd.weights[a] / gain(a) as f64;
                let rb = kd.weights[b] / gain(b) as f64;
                if (ra - rb).abs() > TOL {
                    ra.total_cmp(&rb)
                } else {
                    a.cmp(&b)
                }
            })
            .expect("an unsatisfied vertex can choose itself");
        chosen[best] = true;
    }
    let mut order: Vec<usize> = (0..n)
        .filter(|&v| chosen[v] && kd.weights[v] > 0.0)
        .collect();
    order.sort_by(|&a, &b| kd.weights[b].total_cmp(&kd.weights[a]).then(b.cmp(&a)));
    for v in order {
        chosen[v] = false;
        if !kd.is_k_dominating(&chosen) {
            chosen[v] = true;
        }
    }
    PlayerSet::from_membership(&chosen, &kd.weights)
}

/// Exact minimum-weight k-dominating set. Zero-weight vertices are always
/// taken (adding a vertex never hurts); subsets of the positive-weight
/// vertices are scanned by weight, size and member order.
pub fn exact_k_dominating(kd: &KDomInstance) -> Result<PlayerSet> {
    let n = kd.graph.n();
    let paid: Vec<usize> = (0..n).filter(|&v| kd.weights[v] > 0.0).collect();
    if paid.len() > MAX_EXACT_KDOM_VERTICES {
        return Err(DcsError::budget(
            format!("exact k-domination over {} weighted vertices", paid.len()),
            1u128 << paid.len().min(127),
            1u128 << MAX_EXACT_KDOM_VERTICES,
        ));
    }
    let paid_weights: Vec<f64> = paid.iter().map(|&v| kd.weights[v]).collect();
    let mut order: Vec<(f64, u64)> = (0u64..1 << paid.len())
        .map(|m| (mask_weight(m, &paid_weights), m))
        .collect();
    order.par_sort_unstable_by(|a, b| key_cmp(*a, *b));
    let base: Vec<bool> = (0..n).map(|v| kd.k > 0 && kd.weights[v] == 0.0).collect();
    let build = |mask: u64| {
        let mut chosen = base.clone();
        for b in mask_members(mask) {
            chosen[paid[b]] = true;
        }
        chosen
    };
    let pos = order
        .par_iter()
        .position_first(|&(_, m)| kd.is_k_dominating(&build(m)))
        .ok_or_else(|| DcsError::Internal("choosing every vertex must dominate".into()))?;
    Ok(PlayerSet::from_membership(
        &build(order[pos].1),
        &kd.weights,
    ))
}

/// Minimum-weight direct control set of a binary coordination instance with
/// the all-0 target, through the k-domination reduction.
pub fn coordination_min_dcs(
    instance: &DcsInstance<CoordinationGame>,
    exact: bool,
) -> Result<SolveReport> {
    let started = Instant::now();
    let kd = coordination_to_kdom(instance)?;
    let chosen = if exact {
        exact_k_dominating(&kd)?
    } else {
        greedy_k_dominating(&kd)
    };
    let members = kd.back_map(&chosen);
    let solution = PlayerSet::from_members(members, instance.weights())?;
    let stats = SolveStats {
        oracle_calls: 0,
        subsets_examined: 0,
        wall_time: started.elapsed(),
        exhaustive: Some(exact),
    };
    let method = if exact {
        Method::CoordinationExact
    } else {
        Method::CoordinationGreedy
    };
    let report = SolveReport::certify(instance, solution, method, stats)?;
    debug_assert_eq!(
        report.weight,
        set_weight(&report.solution.members(), instance.weights())
    );
    Ok(report.with_note(format!("k={}; padding={}", kd.k, kd.padding_count())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_force_min_dcs;

    #[test]
    fn utilities() {
        let tri = CoordinationGame::binary(Graph::complete(3), [1.0, 1.0]).unwrap();
        for i in 0..3 {
            assert_eq!(coordination_utility(&tri, &[1, 1, 1], i).unwrap(), 2.0);
        }
        let lone = CoordinationGame::binary(Graph::empty(1), [1.0, 1.0]).unwrap();
        assert_eq!(coordination_utility(&lone, &[1], 0).unwrap(), 0.0);
        assert!(
            CoordinationGame::new(Graph::path(2), vec![vec![1], vec![0]], vec![1.0, 1.0]).is_err()
        );
    }

    fn star_with(
        leaves: usize,
        centre: usize,
        prestige: [f64; 2],
    ) -> (CoordinationGame, Vec<usize>) {
        let g = CoordinationGame::binary(Graph::star(leaves), prestige).unwrap();
        let mut s = vec![1; leaves + 1];
        s[0] = centre;
        (g, s)
    }

    #[test]
    fn neighbour_thresholds() {
        let (g, s) = star_with(4, 1, [1.0, 1.0]);
        assert_eq!(min_neighbors_for_zero(&g, &s, 0).unwrap(), 2);
        let (g, s) = star_with(3, 1, [2.0, 1.0]);
        assert_eq!(min_neighbors_for_zero(&g, &s, 0).unwrap(), 1);
        let g = CoordinationGame::binary(Graph::star(3), [1.0, 1.0]).unwrap();
        assert_eq!(min_neighbors_for_zero(&g, &[1, 0, 0, 0], 0).unwrap(), 0);
        // Enumeration oracle.
        for a1 in 0..6usize {
            for p0 in [1.0, 2.0, 3.0] {
                for p1 in [1.0, 2.0, 3.0] {
                    let (g, s) = star_with(a1, 1, [p0, p1]);
                    let expect = (0..=a1)
                        .find(|&t| p0 * t as f64 >= p1 * (a1 - t) as f64)
                        .unwrap();
                    assert_eq!(min_neighbors_for_zero(&g, &s, 0).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn star_reduction() {
        let g = CoordinationGame::binary(Graph::star(3), [1.0, 1.0]).unwrap();
        let inst = DcsInstance::unit(g, Profile(vec![1; 4]), Profile(vec![0; 4])).unwrap();
        let kd = coordination_to_kdom(&inst).unwrap();
        assert_eq!(kd.requirement, vec![2, 1, 1, 1]);
        assert_eq!(kd.k, 2);
        assert_eq!(kd.padding_count(), 3);
        for leaf in 1..4 {
            assert_eq!(kd.graph.degree(leaf), 2);
        }
        let exact = coordination_min_dcs(&inst, true).unwrap();
        assert!(exact.feasible);
        assert_eq!(
            exact.weight,
            brute_force_min_dcs(&inst, 1 << 10).unwrap().weight
        );
        let greedy = coordination_min_dcs(&inst, false).unwrap();
        assert!(greedy.feasible);
    }

    #[test]
    fn equal_requirements_add_no_padding() {
        let g = CoordinationGame::binary(Graph::cycle(4), [1.0, 1.0]).unwrap();
        let inst = DcsInstance::unit(g, Profile(vec![1; 4]), Profile(vec![0; 4])).unwrap();
        let kd = coordination_to_kdom(&inst).unwrap();
        assert_eq!(kd.padding_count(), 0);
        assert_eq!(kd.k, 1);
    }

    #[test]
    fn k_domination_solvers() {
        let plain = |graph: Graph, k: usize| KDomInstance {
            weights: vec![1.0; graph.n()],
            requirement: vec![k; graph.n()],
            originals: graph.n(),
            graph,
            k,
        };
        let star = plain(Graph::star(3), 1);
        assert_eq!(exact_k_dominating(&star).unwrap().members(), vec![0]);
        assert_eq!(greedy_k_dominating(&star).members(), vec![0]);
        assert!(exact_k_dominating(&plain(Graph::path(4), 0))
            .unwrap()
            .is_empty());
        assert!(greedy_k_dominating(&plain(Graph::path(4), 0)).is_empty());
        assert_eq!(
            exact_k_dominating(&plain(Graph::path(4), 1)).unwrap().len(),
            2
        );
    }

    #[test]
    fn zero_start_must_be_stable() {
        // Vertex 0 on colour 0 with two neighbours on colour 1.
        let g = CoordinationGame::binary(Graph::star(2), [1.0, 1.0]).unwrap();
        let inst = DcsInstance::unit(g, Profile(vec![0, 1, 1]), Profile(vec![0; 3])).unwrap();
        assert!(matches!(
            coordination_to_kdom(&inst),
            Err(DcsError::Unsupported(_))
        ));
    }
}

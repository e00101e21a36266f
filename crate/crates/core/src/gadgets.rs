//! Instance generators built from hardness reductions, each with a certified
//! answer when an exact check fits.

use serde::{Deserialize, Serialize};

use crate::coordination::CoordinationGame;
use crate::error::{DcsError, Result};
use crate::game::{Game, Profile, StructureTag};
use crate::graph::Graph;
use crate::instance::DcsInstance;
use crate::solvers::{brute_force_min_dcs, exact_hitting_set, HittingSet};

/// Largest source graph the generators certify by exact search.
pub const CERTIFY_VERTEX_LIMIT: usize = 16;

/// Largest player count for which closed-form certificates are re-checked by
/// brute force.
pub const RECHECK_PLAYER_LIMIT: usize = 10;

/// Known answer for a generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    /// Minimum weight of a direct control set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum_weight: Option<f64>,
    /// Whether the empty set is an order-independent direct control set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_independent: Option<bool>,
    /// How the answer was obtained.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CertifiedInstance<G> {
    pub instance: DcsInstance<G>,
    pub certificate: Option<Certificate>,
}

/// Games defined by a reduction rather than a table.
#[derive(Clone, Debug, PartialEq)]
pub enum GadgetGame {
    /// `n` players on `{a, b}`; a player earns 1 when at least `p + 1`
    /// players (itself included) share its strategy.
    Threshold { n: usize, p: usize },
    /// `n` players on `{a, b}`; `a` pays 1 with at least `m + 1` players on
    /// `a`, `b` pays 2 with at least `n - m + 1` players on `b`.
    TightStrong { n: usize, m: usize },
    /// Player 0 plus one player per vertex (`v` is player `v + 1`). Only
    /// player 0 has non-zero utility: 0 when it plays 1 while the vertices
    /// playing 1 form a dominating set of size at most `k`, otherwise 1.
    DominatingOi { graph: Graph, k: usize },
    /// One player per vertex on `{a, b}`. Player `l` earns 2 when deleting
    /// the other `b`-players leaves a tree, else 1 on `a` and 0 on `b`.
    TreeDeletion { graph: Graph },
    /// One player per set followed by one per ground element. A set player
    /// on 1 earns 1 if one of its elements plays 1 and -1 otherwise; every
    /// other case pays 0.
    HittingSet {
        ground: usize,
        sets: Vec<Vec<usize>>,
    },
}

impl GadgetGame {
    fn count_same(profile: &[usize], player: usize) -> usize {
        profile.iter().filter(|&&x| x == profile[player]).count()
    }
}

impl Game for GadgetGame {
    fn n_players(&self) -> usize {
        match self {
            GadgetGame::Threshold { n, .. } | GadgetGame::TightStrong { n, .. } => *n,
            GadgetGame::DominatingOi { graph, .. } => graph.n() + 1,
            GadgetGame::TreeDeletion { graph } => graph.n(),
            GadgetGame::HittingSet { ground, sets } => sets.len() + ground,
        }
    }

    fn strategy_count(&self, _player: usize) -> usize {
        2
    }

    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        match self {
            GadgetGame::Threshold { p, .. } => {
                if Self::count_same(profile, player) > *p {
                    1.0
                } else {
                    0.0
                }
            }
            GadgetGame::TightStrong { n, m } => {
                let same = Self::count_same(profile, player);
                match profile[player] {
                    0 if same > *m => 1.0,
                    1 if same + m > *n => 2.0,
                    _ => 0.0,
                }
            }
            GadgetGame::DominatingOi { graph, k } => {
                if player != 0 {
                    return 0.0;
                }
                let chosen: Vec<bool> = profile[1..].iter().map(|&x| x == 1).collect();
                let size = chosen.iter().filter(|&&c| c).count();
                if profile[0] == 1 && size <= *k && graph.is_dominating(&chosen) {
                    0.0
                } else {
                    1.0
                }
            }
            GadgetGame::TreeDeletion { graph } => {
                let keep: Vec<bool> = (0..graph.n())
                    .map(|i| i == player || profile[i] == 0)
                    .collect();
                if graph.induced_is_tree(&keep) {
                    2.0
                } else if profile[player] == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            GadgetGame::HittingSet { sets, .. } => {
                if player >= sets.len() || profile[player] == 0 {
                    return 0.0;
                }
                if sets[player].iter().any(|&e| profile[sets.len() + e] == 1) {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    fn structure(&self) -> StructureTag {
        StructureTag::BuiltinGadget
    }

    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.n_players();
        let all: Vec<usize> = (0..n).collect();
        Some(match self {
            GadgetGame::Threshold { .. }
            | GadgetGame::TightStrong { .. }
            | GadgetGame::TreeDeletion { .. } => {
                vec![all; n]
            }
            GadgetGame::DominatingOi { .. } => std::iter::once(all)
                .chain((1..n).map(|i| vec![i]))
                .collect(),
            GadgetGame::HittingSet { sets, .. } => (0..n)
                .map(|i| {
                    let mut s = vec![i];
                    if i < sets.len() {
                        s.extend(sets[i].iter().map(|&e| sets.len() + e));
                    }
                    s
                })
                .collect(),
        })
    }
}

/// File form of a [`GadgetGame`]: the generator name and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GadgetSpec {
    Threshold {
        n: usize,
        p: usize,
    },
    TightStrong {
        n: usize,
        m: usize,
    },
    DominatingOi {
        graph: Graph,
        k: usize,
    },
    TreeDeletion {
        graph: Graph,
    },
    HittingSet {
        ground: usize,
        sets: Vec<Vec<usize>>,
    },
}

impl GadgetSpec {
    pub fn to_game(&self) -> Result<GadgetGame> {
        Ok(match self.clone() {
            GadgetSpec::Threshold { n, p } => {
                if !(1 <= p && p < n) {
                    return Err(DcsError::invalid("threshold gadget needs 1 <= p < n"));
                }
                GadgetGame::Threshold { n, p }
            }
            GadgetSpec::TightStrong { n, m } => {
                if !(1 <= m && m < n) {
                    return Err(DcsError::invalid("tight-strong gadget needs 1 <= m < n"));
                }
                GadgetGame::TightStrong { n, m }
            }
            GadgetSpec::DominatingOi { graph, k } => {
                if graph.n() == 0 {
                    return Err(DcsError::invalid("the graph needs a vertex"));
                }
                GadgetGame::DominatingOi { graph, k }
            }
            GadgetSpec::TreeDeletion { graph } => {
                if graph.n() == 0 {
                    return Err(DcsError::invalid("the graph needs a vertex"));
                }
                GadgetGame::TreeDeletion { graph }
            }
            GadgetSpec::HittingSet { ground, sets } => {
                HittingSet::new(vec![1.0; ground], sets.clone())?;
                GadgetGame::HittingSet { ground, sets }
            }
        })
    }
}

impl From<&GadgetGame> for GadgetSpec {
    fn from(g: &GadgetGame) -> Self {
        match g.clone() {
            GadgetGame::Threshold { n, p } => GadgetSpec::Threshold { n, p },
            GadgetGame::TightStrong { n, m } => GadgetSpec::TightStrong { n, m },
            GadgetGame::DominatingOi { graph, k } => GadgetSpec::DominatingOi { graph, k },
            GadgetGame::TreeDeletion { graph } => GadgetSpec::TreeDeletion { graph },
            GadgetGame::HittingSet { ground, sets } => GadgetSpec::HittingSet { ground, sets },
        }
    }
}

fn recheck(instance: &DcsInstance<GadgetGame>, claimed: f64) -> Result<()> {
    if instance.n() <= RECHECK_PLAYER_LIMIT {
        let found = brute_force_min_dcs(instance, 1 << RECHECK_PLAYER_LIMIT)?.weight;
        if found != claimed {
            return Err(DcsError::Internal(format!(
                "certificate claims {claimed}, brute force finds {found}"
            )));
        }
    }
    Ok(())
}

/// `n` players, `s = all-a`, `d = all-b`. The optimum is `min(p, n - p)`:
/// `p` movers let the next `b`-player reach `p + 1`, while `n - p` movers
/// leave the `a`-players at 0 too, so staying on `a` is no longer strict.
pub fn gadget_threshold(n: usize, p: usize) -> Result<CertifiedInstance<GadgetGame>> {
    if !(1 <= p && p < n) {
        return Err(DcsError::invalid(format!(
            "threshold gadget needs 1 <= p < n, got n={n}, p={p}"
        )));
    }
    let instance = DcsInstance::unit(
        GadgetGame::Threshold { n, p },
        Profile::uniform(n, 0),
        Profile::uniform(n, 1),
    )?;
    let optimum = p.min(n - p);
    recheck(&instance, optimum as f64)?;
    Ok(CertifiedInstance {
        instance,
        certificate: Some(Certificate {
            optimum_weight: Some(optimum as f64),
            order_independent: None,
            note: format!("threshold family: minimum is min(p, n - p) = {optimum}"),
        }),
    })
}

/// `n` players, `d = all-a`, `s = all-b`; every set of at least `m`
/// players is a direct control set from any start, and `d` is exactly
/// `(n - m)`-strong.
pub fn gadget_tight_strong(n: usize, m: usize) -> Result<CertifiedInstance<GadgetGame>> {
    if !(1 <= m && m < n) {
        return Err(DcsError::invalid(format!(
            "tight-strong gadget needs 1 <= m < n, got n={n}, m={m}"
        )));
    }
    let instance = DcsInstance::unit(
        GadgetGame::TightStrong { n, m },
        Profile::uniform(n, 1),
        Profile::uniform(n, 0),
    )?;
    recheck(&instance, m as f64)?;
    Ok(CertifiedInstance {
        instance,
        certificate: Some(Certificate {
            optimum_weight: Some(m as f64),
            order_independent: None,
            note: format!(
                "tight strength family: minimum is m = {m}, target is {}-strong",
                n - m
            ),
        }),
    })
}

/// Order-independence gadget: `s = all-0`, `d = all-1`, and the empty set is
/// an order-independent direct control set exactly when the graph has no
/// dominating set of size at most `k`.
///
/// When `k` is at least the vertex count the answer is trivially "has one",
/// and the single-edge graph with `k = 1` is emitted instead.
pub fn gadget_dominating_oi(graph: &Graph, k: usize) -> Result<CertifiedInstance<GadgetGame>> {
    if graph.n() == 0 {
        return Err(DcsError::invalid("the graph needs a vertex"));
    }
    let (graph, k, substituted) = if graph.n() <= k {
        (Graph::path(2), 1, true)
    } else {
        (graph.clone(), k, false)
    };
    let n = graph.n() + 1;
    let certificate = (graph.n() <= CERTIFY_VERTEX_LIMIT).then(|| {
        let gamma = graph.domination_number();
        Certificate {
            optimum_weight: Some(0.0),
            order_independent: Some(gamma > k),
            note: if substituted {
                "k reaches the vertex count; replaced by the single edge with k = 1".into()
            } else {
                format!("exact dominating-set search: domination number {gamma}, k = {k}")
            },
        }
    });
    let instance = DcsInstance::unit(
        GadgetGame::DominatingOi { graph, k },
        Profile::uniform(n, 0),
        Profile::uniform(n, 1),
    )?;
    Ok(CertifiedInstance {
        instance,
        certificate,
    })
}

/// Coordination game on the doubled graph: both copies of vertex `v` own
/// colour `v + 1`, every prestige is 1, `s` puts everyone on the own colour
/// and `d` on colour 0. The minimum direct control set has the size of a
/// minimum dominating set of the source graph.
pub fn gadget_doubled_coordination(graph: &Graph) -> Result<CertifiedInstance<CoordinationGame>> {
    let n = graph.n();
    if n == 0 {
        return Err(DcsError::invalid("the graph needs a vertex"));
    }
    let doubled = graph.doubled();
    let colors: Vec<Vec<usize>> = (0..2 * n).map(|v| vec![0, v % n + 1]).collect();
    let game = CoordinationGame::new(doubled, colors, vec![1.0; n + 1])?;
    let instance = DcsInstance::unit(game, Profile::uniform(2 * n, 1), Profile::uniform(2 * n, 0))?;
    let certificate = (n <= CERTIFY_VERTEX_LIMIT).then(|| {
        let gamma = graph.domination_number();
        Certificate {
            optimum_weight: Some(gamma as f64),
            order_independent: None,
            note: format!("exact dominating-set search on the source graph: {gamma}"),
        }
    });
    Ok(CertifiedInstance {
        instance,
        certificate,
    })
}

/// Vertex-deletion-to-tree gadget on a connected graph: `s = all-a`,
/// `d = all-b`, and a set is a direct control set exactly when deleting it
/// leaves a tree. A tree input yields the same construction with optimum 0.
pub fn gadget_tree_deletion(graph: &Graph) -> Result<CertifiedInstance<GadgetGame>> {
    if !graph.is_connected() {
        return Err(DcsError::invalid(
            "the tree-deletion gadget needs a connected graph",
        ));
    }
    let n = graph.n();
    let certificate = (n <= CERTIFY_VERTEX_LIMIT).then(|| {
        let deleted = graph.min_tree_deletion();
        Certificate {
            optimum_weight: Some(deleted.len() as f64),
            order_independent: None,
            note: if graph.is_tree() {
                "the input is already a tree".into()
            } else {
                format!("exact vertex-deletion search: delete {deleted:?}")
            },
        }
    });
    let instance = DcsInstance::unit(
        GadgetGame::TreeDeletion {
            graph: graph.clone(),
        },
        Profile::uniform(n, 0),
        Profile::uniform(n, 1),
    )?;
    Ok(CertifiedInstance {
        instance,
        certificate,
    })
}

/// Hitting-set gadget: set players weigh `heavy_weight`, element players 1;
/// `s = all-0`, `d = all-1`. Minimum direct control sets of weight below
/// `heavy_weight` are the minimum hitting sets (element `e` is player
/// `sets.len() + e`).
pub fn gadget_hitting_set(
    ground: usize,
    sets: Vec<Vec<usize>>,
    heavy_weight: f64,
) -> Result<CertifiedInstance<GadgetGame>> {
    let h = HittingSet::new(vec![1.0; ground], sets.clone())?;
    let n = sets.len() + ground;
    let weights = (0..n)
        .map(|i| if i < sets.len() { heavy_weight } else { 1.0 })
        .collect();
    let certificate = (ground <= crate::solvers::MAX_EXACT_HITTING_ELEMENTS).then(|| {
        let best = exact_hitting_set(&h).expect("ground set within the exact limit");
        Certificate {
            optimum_weight: Some(best.len() as f64),
            order_independent: None,
            note: format!("exact hitting set {best:?}"),
        }
    });
    let game = GadgetGame::HittingSet { ground, sets };
    let instance = DcsInstance::new(
        game,
        Profile::uniform(n, 0),
        Profile::uniform(n, 1),
        weights,
    )?;
    Ok(CertifiedInstance {
        instance,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{is_k_strong, is_nash, DEFAULT_COALITION_BUDGET};
    use crate::instance::DEFAULT_ORDER_INDEPENDENCE_CAP;
    use crate::solvers::singleton_hitting_min_dcs;
    use crate::solvers::HittingMode;

    #[test]
    fn threshold_family() {
        for (n, p, opt) in [
            (4, 2, 2.0),
            (3, 1, 1.0),
            (5, 4, 1.0),
            (8, 3, 3.0),
            (7, 5, 2.0),
        ] {
            let c = gadget_threshold(n, p).unwrap();
            assert_eq!(c.certificate.unwrap().optimum_weight, Some(opt));
            assert!(is_nash(c.instance.game(), c.instance.start()).unwrap());
        }
        assert!(gadget_threshold(3, 3).is_err());
    }

    #[test]
    fn tight_strong_family() {
        let c = gadget_tight_strong(4, 1).unwrap();
        let (g, d) = (c.instance.game(), c.instance.target());
        assert!(is_k_strong(g, d, 3, DEFAULT_COALITION_BUDGET).unwrap());
        assert!(!is_k_strong(g, d, 4, DEFAULT_COALITION_BUDGET).unwrap());
    }

    #[test]
    fn dominating_gadget() {
        let check = |g: &Graph, k: usize| {
            let c = gadget_dominating_oi(g, k).unwrap();
            let empty = c.instance.player_set([]).unwrap();
            assert!(c.instance.is_direct_control_set(&empty).unwrap());
            let oi = c
                .instance
                .is_order_independent_dcs(&empty, DEFAULT_ORDER_INDEPENDENCE_CAP)
                .unwrap();
            assert_eq!(Some(oi), c.certificate.unwrap().order_independent);
            oi
        };
        assert!(!check(&Graph::path(3), 1));
        assert!(check(&Graph::empty(2), 1));
        assert!(!check(&Graph::complete(3), 1));
        assert!(!check(&Graph::empty(2), 5));
    }

    #[test]
    fn doubled_gadget() {
        for (g, gamma) in [
            (Graph::star(3), 1.0),
            (Graph::path(4), 2.0),
            (Graph::path(2), 1.0),
        ] {
            let c = gadget_doubled_coordination(&g).unwrap();
            assert_eq!(c.certificate.unwrap().optimum_weight, Some(gamma));
            assert_eq!(
                brute_force_min_dcs(&c.instance, 1 << 10).unwrap().weight,
                gamma
            );
            // Each node starts with utility 1 from its twin.
            for i in 0..c.instance.n() {
                assert_eq!(c.instance.game().utility(c.instance.start(), i), 1.0);
            }
        }
    }

    #[test]
    fn tree_deletion_gadget() {
        for (g, opt) in [
            (Graph::cycle(4), 1.0),
            (Graph::complete(4), 2.0),
            (Graph::path(3), 0.0),
        ] {
            let c = gadget_tree_deletion(&g).unwrap();
            assert_eq!(c.certificate.unwrap().optimum_weight, Some(opt));
            assert_eq!(
                brute_force_min_dcs(&c.instance, 1 << 10).unwrap().weight,
                opt
            );
        }
        assert!(gadget_tree_deletion(&Graph::empty(2)).is_err());
    }

    #[test]
    fn hitting_gadget() {
        // {a,b}, {b,c} with a,b,c = 0,1,2: players 0,1 are sets, 2..5 elements.
        let c = gadget_hitting_set(3, vec![vec![0, 1], vec![1, 2]], 1e6).unwrap();
        let r = singleton_hitting_min_dcs(&c.instance, HittingMode::Exact, true).unwrap();
        assert_eq!(r.solution.members(), vec![3]);
        assert_eq!(r.weight, 1.0);
        let forced = gadget_hitting_set(2, vec![vec![1]], 1e6).unwrap();
        let r = singleton_hitting_min_dcs(&forced.instance, HittingMode::Auto, true).unwrap();
        assert_eq!(r.solution.members(), vec![2]);
    }
}

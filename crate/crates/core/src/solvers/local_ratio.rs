use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::InfluenceMap;
use crate::error::{DcsError, Result};
use crate::game::{is_best_response, CountingGame, Game, PlayerSet};
use crate::instance::{intermediate, uncontrolled, DcsInstance, Method, SolveReport, SolveStats};

/// One peeling step: `epsilon` subtracted from every player in `support`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Peel {
    pub player: usize,
    pub epsilon: f64,
    pub support: Vec<usize>,
}

/// A local-ratio run with its weight bookkeeping: for every player, the
/// original weight equals the sum of the epsilons of the peels containing it
/// plus its residual weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalRatioTrace {
    pub report: SolveReport,
    pub peels: Vec<Peel>,
    pub residual: Vec<f64>,
}

/// Local-ratio approximation. Returns a feasible set of weight at most
/// `f * OPT`, `f` the largest influence set, when feasibility for each player
/// is monotone under adding controlled players. The caller vouches for that
/// property; see [`player_wise_monotone_sampled`].
pub fn local_ratio_dcs<G: Game>(
    instance: &DcsInstance<G>,
    influence: &InfluenceMap,
) -> Result<SolveReport> {
    local_ratio_trace(instance, influence).map(|t| t.report)
}

pub fn local_ratio_trace<G: Game>(
    instance: &DcsInstance<G>,
    influence: &InfluenceMap,
) -> Result<LocalRatioTrace> {
    let started = Instant::now();
    let n = instance.n();
    if influence.sets().len() != n {
        return Err(DcsError::invalid(format!(
            "influence map covers {} players, game has {n}",
            influence.sets().len()
        )));
    }
    let game = CountingGame::new(instance.game());
    let mut residual = instance.weights().to_vec();
    let mut peels = Vec::new();
    let mut rounds = 0u64;
    loop {
        rounds += 1;
        let zero: Vec<bool> = residual.iter().map(|&w| w == 0.0).collect();
        let open = uncontrolled(&game, instance.start(), instance.target(), &zero);
        let Some(&player) = open.first() else {
            let solution = PlayerSet::from_membership(&zero, instance.weights());
            let stats = SolveStats {
                oracle_calls: game.calls(),
                subsets_examined: rounds,
                wall_time: started.elapsed(),
                exhaustive: None,
            };
            let report = SolveReport::certify(instance, solution, Method::LocalRatio, stats)?
                .with_note(format!("f={}", influence.bound()));
            return Ok(LocalRatioTrace {
                report,
                peels,
                residual,
            });
        };
        if peels.len() >= n {
            return Err(DcsError::Internal(format!(
                "local ratio did not terminate after {n} peels"
            )));
        }
        let support: Vec<usize> = influence
            .of(player)
            .iter()
            .copied()
            .filter(|&j| !zero[j])
            .collect();
        let epsilon = support
            .iter()
            .map(|&j| residual[j])
            .fold(f64::INFINITY, f64::min);
        for &j in &support {
            residual[j] = if residual[j] == epsilon {
                0.0
            } else {
                residual[j] - epsilon
            };
        }
        peels.push(Peel {
            player,
            epsilon,
            support,
        });
    }
}

/// Samples pairs `A ⊆ B` and checks that every player outside `B` brought to
/// its target by `A` is still brought there by `B`.
pub fn player_wise_monotone_sampled<G: Game>(
    instance: &DcsInstance<G>,
    samples: usize,
    seed: u64,
) -> bool {
    let n = instance.n();
    let (start, target) = (instance.start(), instance.target());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let density: f64 = rng.gen();
        let small: Vec<bool> = (0..n).map(|_| rng.gen_bool(density)).collect();
        let large: Vec<bool> = small.iter().map(|&a| a || rng.gen_bool(0.5)).collect();
        let mut ps = intermediate(start, target, &small);
        let mut pl = intermediate(start, target, &large);
        (0..n).filter(|&k| !large[k]).all(|k| {
            !is_best_response(instance.game(), &mut ps, k, target[k])
                || is_best_response(instance.game(), &mut pl, k, target[k])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::two_by_two;
    use crate::game::Profile;
    use crate::solvers::brute_force_min_dcs;

    #[test]
    fn zero_weights_need_no_peeling() {
        let inst = DcsInstance::new(
            two_by_two(),
            Profile(vec![0, 0]),
            Profile(vec![1, 1]),
            vec![0.0, 0.0],
        )
        .unwrap();
        let t = local_ratio_trace(&inst, &InfluenceMap::complete(2)).unwrap();
        assert!(t.peels.is_empty());
        assert!(t.report.feasible);
        assert_eq!(t.report.weight, 0.0);
    }

    #[test]
    fn peeling_is_bounded_and_accounted() {
        let inst = DcsInstance::new(
            two_by_two(),
            Profile(vec![0, 0]),
            Profile(vec![1, 1]),
            vec![3.0, 5.0],
        )
        .unwrap();
        let map = InfluenceMap::complete(2);
        let t = local_ratio_trace(&inst, &map).unwrap();
        assert!(t.report.feasible);
        assert_eq!(t.report.solution.members(), vec![0]);
        for j in 0..2 {
            let peeled: f64 = t
                .peels
                .iter()
                .filter(|p| p.support.contains(&j))
                .map(|p| p.epsilon)
                .sum();
            assert_eq!(peeled + t.residual[j], inst.weights()[j]);
        }
        let opt = brute_force_min_dcs(&inst, 1 << 10).unwrap().weight;
        assert!(t.report.weight <= map.bound() as f64 * opt);
        assert!(player_wise_monotone_sampled(&inst, 100, 1));
    }
}

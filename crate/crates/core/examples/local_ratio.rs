//! Local-ratio approximation with its peeling trace.

use dcs::random::{random_graphical, random_weights};
use dcs::solvers::{
    brute_force_min_dcs, influence_map, local_ratio_trace, player_wise_monotone_sampled,
};
use dcs::solvers::{DEFAULT_BRUTE_FORCE_BUDGET, DEFAULT_PERTURBATION_BUDGET};

pub fn main() -> dcs::Result<()> {
    let mut seed = 0;
    let (instance, optimum) = loop {
        let candidate = random_graphical(8, 2, seed)?.with_weights(random_weights(8, 4, seed))?;
        let optimum = brute_force_min_dcs(&candidate, DEFAULT_BRUTE_FORCE_BUDGET)?.weight;
        if optimum > 0.0 && player_wise_monotone_sampled(&candidate, 200, seed) {
            break (candidate, optimum);
        }
        seed += 1;
    };
    let influence = influence_map(instance.game(), DEFAULT_PERTURBATION_BUDGET)?;
    let trace = local_ratio_trace(&instance, &influence)?;
    for peel in &trace.peels {
        println!(
            "uncontrolled {}: peel {} from {:?}",
            peel.player, peel.epsilon, peel.support
        );
    }
    println!(
        "seed {seed}: local ratio {} (weight {}), optimum {optimum}, bound f*OPT = {}",
        trace.report.solution,
        trace.report.weight,
        influence.bound() as f64 * optimum
    );
    Ok(())
}

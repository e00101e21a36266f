//! Exhaustive minimum-weight search next to the ordering heuristic.

use dcs::random::{random_normal_form, random_weights};
use dcs::solvers::{brute_force_min_dcs, incremental_min_dcs, DEFAULT_BRUTE_FORCE_BUDGET};

pub fn main() -> dcs::Result<()> {
    for seed in 0..5 {
        let instance = random_normal_form(6, 2, seed)?.with_weights(random_weights(6, 5, seed))?;
        let exact = brute_force_min_dcs(&instance, DEFAULT_BRUTE_FORCE_BUDGET)?;
        let sampled = incremental_min_dcs(&instance, 50, seed)?;
        let all_orders = incremental_min_dcs(&instance, 720, seed)?;
        println!(
            "seed {seed}: optimum {} ({} oracle calls); 50 orderings {}; all orderings {}",
            exact.solution, exact.stats.oracle_calls, sampled.solution, all_orders.solution
        );
    }
    Ok(())
}

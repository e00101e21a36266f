//! Singleton congestion games: the balanced-shift instance, attraction basins,
//! and the exact structural solver on a random game in general position.

use dcs::congestion::{
    attraction_basin, balanced_shift_instance, cost_monotonicity_check, dcs_size_upper_bound,
    general_position_check, singleton_min_dcs,
};
use dcs::random::random_singleton_congestion;
use dcs::solvers::{brute_force_min_dcs, DEFAULT_BRUTE_FORCE_BUDGET};

pub fn main() -> dcs::Result<()> {
    let shift = balanced_shift_instance(6, 3)?;
    let brute = brute_force_min_dcs(&shift, DEFAULT_BRUTE_FORCE_BUDGET)?;
    println!(
        "balanced shift n=6 m=3: minimum {} (size bound {})",
        brute.solution,
        dcs_size_upper_bound(shift.game())
    );
    println!(
        "basin of the start: {:?}",
        attraction_basin(shift.game(), shift.start())?
    );

    let mut seed = 0;
    loop {
        let instance = random_singleton_congestion(8, 3, true, seed)?;
        if general_position_check(instance.game()).is_ok()
            && cost_monotonicity_check(instance.game(), instance.target())?
        {
            let fast = singleton_min_dcs(&instance)?;
            let brute = brute_force_min_dcs(&instance, DEFAULT_BRUTE_FORCE_BUDGET)?;
            println!(
                "seed {seed}: structural {} ({} oracle calls), brute force {} ({} oracle calls)",
                fast.solution, fast.stats.oracle_calls, brute.solution, brute.stats.oracle_calls
            );
            return Ok(());
        }
        seed += 1;
    }
}

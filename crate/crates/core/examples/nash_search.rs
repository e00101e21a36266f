//! Pure equilibria by enumeration and by best-response dynamics.

use dcs::congestion::balanced_shift_instance;
use dcs::nash::{best_response_dynamics, enumerate_nash, DEFAULT_NASH_BUDGET};

pub fn main() -> dcs::Result<()> {
    let instance = balanced_shift_instance(6, 3)?;
    let game = instance.game();
    let all = enumerate_nash(game, DEFAULT_NASH_BUDGET)?;
    println!(
        "{} equilibria; start listed: {}",
        all.len(),
        all.contains(instance.start())
    );
    let run = best_response_dynamics(game, &[0; 6], 100)?;
    println!(
        "dynamics from all-on-0: {} after {} moves, loads {:?}",
        run.profile,
        run.steps,
        game.loads(&run.profile)
    );
    Ok(())
}

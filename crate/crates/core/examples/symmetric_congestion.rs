//! Symmetric congestion games with strictly decreasing costs: every
//! equilibrium is uniform and only the number of controlled players matters.

use dcs::congestion::symmetric_decreasing_min_dcs;
use dcs::nash::{enumerate_nash, DEFAULT_NASH_BUDGET};
use dcs::random::random_symmetric_decreasing;

pub fn main() -> dcs::Result<()> {
    let instance = random_symmetric_decreasing(6, 3, 4)?;
    println!("strategies {:?}", instance.game().strategies()[0]);
    for ne in enumerate_nash(instance.game(), DEFAULT_NASH_BUDGET)? {
        println!("equilibrium {ne}");
    }
    let report = symmetric_decreasing_min_dcs(&instance)?;
    println!(
        "from {} to {}: control {} ({:?})",
        instance.start(),
        instance.target(),
        report.solution,
        report.notes
    );
    Ok(())
}

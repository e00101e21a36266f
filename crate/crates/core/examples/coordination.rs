//! Binary coordination on a graph solved through k-domination.

use dcs::coordination::{coordination_min_dcs, coordination_to_kdom, min_neighbors_for_zero};
use dcs::random::random_coordination;

pub fn main() -> dcs::Result<()> {
    let instance = random_coordination(10, 5)?;
    let game = instance.game();
    println!(
        "start colours {}, prestige {:?}",
        instance.start(),
        game.prestige()
    );
    for v in 0..instance.n() {
        println!(
            "vertex {v}: degree {}, needs {}",
            game.graph().degree(v),
            min_neighbors_for_zero(game, instance.start(), v)?
        );
    }
    let kd = coordination_to_kdom(&instance)?;
    println!("k = {}, {} padding vertices", kd.k, kd.padding_count());
    for exact in [false, true] {
        let report = coordination_min_dcs(&instance, exact)?;
        println!(
            "{}: {} weight {}",
            report.method, report.solution, report.weight
        );
    }
    Ok(())
}

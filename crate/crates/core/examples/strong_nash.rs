//! Coalition-proofness of equilibria.

use dcs::gadgets::gadget_tight_strong;
use dcs::game::{is_k_strong, strength, DEFAULT_COALITION_BUDGET};
use dcs::TableGame;

pub fn main() -> dcs::Result<()> {
    let matrix = TableGame::new(
        vec![2, 2],
        vec![
            vec![1.0, 1.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![2.0, 2.0],
        ],
    )?;
    for profile in [[0, 0], [1, 1]] {
        println!(
            "{profile:?}: 2-strong {}",
            is_k_strong(&matrix, &profile, 2, DEFAULT_COALITION_BUDGET)?
        );
    }
    for (n, m) in [(4, 1), (5, 2), (6, 4)] {
        let gadget = gadget_tight_strong(n, m)?;
        let k = strength(
            gadget.instance.game(),
            gadget.instance.target(),
            n,
            DEFAULT_COALITION_BUDGET,
        )?;
        println!("tight-strong({n},{m}): target is exactly {k}-strong");
    }
    Ok(())
}

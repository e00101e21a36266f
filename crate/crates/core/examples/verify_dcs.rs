//! Checks candidate sets on a two-player coordination matrix.

use dcs::game::is_nash;
use dcs::{DcsInstance, MinimalityMode, Profile, TableGame};

pub fn main() -> dcs::Result<()> {
    // (T,L) pays 1 each, (B,R) pays 2 each, mismatches pay nothing.
    let game = TableGame::new(
        vec![2, 2],
        vec![
            vec![1.0, 1.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![2.0, 2.0],
        ],
    )?;
    let (s, d) = (Profile(vec![0, 0]), Profile(vec![1, 1]));
    println!(
        "s is Nash: {}, d is Nash: {}",
        is_nash(&game, &s)?,
        is_nash(&game, &d)?
    );
    let instance = DcsInstance::new(game, s, d, vec![3.0, 2.0])?;

    for members in [vec![], vec![0], vec![1], vec![0, 1]] {
        let set = instance.player_set(members)?;
        let feasible = instance.is_direct_control_set(&set)?;
        // Minimality is only defined for direct control sets.
        let minimal = if feasible {
            Some(instance.is_minimal_dcs(&set, MinimalityMode::Exact { budget: 1 << 10 })?)
        } else {
            None
        };
        println!(
            "{set}: sd = {}, controls everyone: {feasible}, minimal: {minimal:?}, controls player 1: {}",
            instance.intermediate_profile(&set)?,
            instance.is_dcs_for_player(&set, 1)?,
        );
    }
    Ok(())
}

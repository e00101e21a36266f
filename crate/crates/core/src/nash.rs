//! Finding pure Nash equilibria for test setup: exhaustive enumeration and
//! best-response dynamics.

use rayon::prelude::*;

use crate::error::{DcsError, Result};
use crate::game::{
    best_response_set, deviation_values, is_nash_unchecked, profile_space, validate_profile, Game,
    Profile,
};

/// Default cap on the number of profiles [`enumerate_nash`] scans.
pub const DEFAULT_NASH_BUDGET: u128 = 1_000_000;

/// Profile number `index` in row-major order (last player fastest).
fn decode(mut index: u128, counts: &[usize]) -> Vec<usize> {
    let mut out = vec![0; counts.len()];
    for (slot, &c) in out.iter_mut().zip(counts).rev() {
        *slot = (index % c as u128) as usize;
        index /= c as u128;
    }
    out
}

/// Every pure Nash equilibrium, in row-major profile order.
pub fn enumerate_nash<G: Game + ?Sized>(game: &G, budget: u128) -> Result<Vec<Profile>> {
    let counts: Vec<usize> = (0..game.n_players())
        .map(|i| game.strategy_count(i))
        .collect();
    let space = profile_space(&counts).unwrap_or(u128::MAX);
    if space > budget || space > u64::MAX as u128 {
        return Err(DcsError::budget("Nash enumeration", space, budget));
    }
    Ok((0..space as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let p = decode(idx as u128, &counts);
            is_nash_unchecked(game, &p).then_some(Profile(p))
        })
        .collect())
}

/// Fixpoint of best-response dynamics and the number of moves taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dynamics {
    pub profile: Profile,
    pub steps: usize,
}

/// Repeatedly lets the lowest-index player with a strictly better strategy
/// move to its lowest-index best response. In games with an exact potential,
/// such as congestion games, every move lowers the potential, so the
/// dynamics stop at a Nash equilibrium after finitely many steps.
pub fn best_response_dynamics<G: Game + ?Sized>(
    game: &G,
    start: &[usize],
    max_steps: usize,
) -> Result<Dynamics> {
    validate_profile(game, start)?;
    let mut profile = start.to_vec();
    for steps in 0..=max_steps {
        let mover = (0..game.n_players()).find_map(|i| {
            let br = best_response_set(&deviation_values(game, &mut profile, i));
            (!br.contains(&profile[i])).then(|| (i, br[0]))
        });
        match mover {
            None => {
                return Ok(Dynamics {
                    profile: Profile(profile),
                    steps,
                })
            }
            Some((i, b)) if steps < max_steps => profile[i] = b,
            Some(_) => break,
        }
    }
    Err(DcsError::budget(
        "best-response dynamics steps",
        max_steps as u128 + 1,
        max_steps as u128,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congestion::balanced_shift_instance;
    use crate::game::tests::two_by_two;
    use crate::game::TableGame;

    #[test]
    fn two_by_two_equilibria() {
        let ne = enumerate_nash(&two_by_two(), DEFAULT_NASH_BUDGET).unwrap();
        assert_eq!(ne, vec![Profile(vec![0, 0]), Profile(vec![1, 1])]);
        assert!(enumerate_nash(&two_by_two(), 3).is_err());
    }

    #[test]
    fn dominant_profile_is_unique() {
        // Strategy 1 strictly dominant for both players.
        let g = TableGame::new(
            vec![2, 2],
            vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
            ],
        )
        .unwrap();
        assert_eq!(enumerate_nash(&g, 100).unwrap(), vec![Profile(vec![1, 1])]);
    }

    #[test]
    fn congestion_dynamics_balance_loads() {
        let inst = balanced_shift_instance(6, 3).unwrap();
        let game = inst.game();
        let ne = enumerate_nash(game, DEFAULT_NASH_BUDGET).unwrap();
        assert!(ne.contains(inst.start()) && ne.contains(inst.target()));
        let at_ne = best_response_dynamics(game, inst.start(), 100).unwrap();
        assert_eq!(at_ne.steps, 0);
        let run = best_response_dynamics(game, &[0; 6], 100).unwrap();
        assert_eq!(game.loads(&run.profile), vec![2, 2, 2]);
        assert!(ne.contains(&run.profile));
        assert!(best_response_dynamics(game, &[0; 6], 1).is_err());
    }
}

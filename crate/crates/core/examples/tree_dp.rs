//! Exact dynamic program on a tree graphical game, from every root.

use dcs::random::{random_tree_pairwise, random_weights};
use dcs::solvers::{brute_force_min_dcs, DEFAULT_BRUTE_FORCE_BUDGET};
use dcs::tree::{tree_dp_min_dcs, TreeDpMode, TreeDpOptions};

pub fn main() -> dcs::Result<()> {
    let instance = random_tree_pairwise(12, 3, 11)?.with_weights(random_weights(12, 6, 11))?;
    println!(
        "tree edges: {:?}",
        instance.game().graph().edges().collect::<Vec<_>>()
    );
    for mode in [TreeDpMode::Generic, TreeDpMode::Additive] {
        let options = TreeDpOptions {
            mode,
            ..TreeDpOptions::default()
        };
        let weights: Vec<f64> = (0..instance.n())
            .map(|root| tree_dp_min_dcs(&instance, root, options).map(|r| r.weight))
            .collect::<dcs::Result<_>>()?;
        println!("{mode:?}: weight by root {weights:?}");
    }
    let brute = brute_force_min_dcs(&instance, DEFAULT_BRUTE_FORCE_BUDGET)?;
    println!("brute force: {} weight {}", brute.solution, brute.weight);
    Ok(())
}

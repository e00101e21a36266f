//! The hitting-set pipeline on the hitting-set gadget: set players are heavy,
//! so the cheapest control set is a minimum hitting set of the elements.

use dcs::gadgets::gadget_hitting_set;
use dcs::solvers::{singleton_hitting_min_dcs, HittingMode};

pub fn main() -> dcs::Result<()> {
    let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4, 0]];
    let gadget = gadget_hitting_set(5, sets.clone(), 1e6)?;
    for mode in [HittingMode::Greedy, HittingMode::Exact] {
        let report = singleton_hitting_min_dcs(&gadget.instance, mode, true)?;
        let elements: Vec<usize> = report.solution.iter().map(|p| p - sets.len()).collect();
        println!("{mode:?}: elements {elements:?}, weight {}", report.weight);
    }
    println!("certificate: {:?}", gadget.certificate);
    Ok(())
}

//! Reduction gadgets with their certificates, checked against brute force.

use dcs::gadgets::{
    gadget_doubled_coordination, gadget_threshold, gadget_tight_strong, gadget_tree_deletion,
};
use dcs::solvers::brute_force_min_dcs;
use dcs::Graph;

pub fn main() -> dcs::Result<()> {
    let budget = 1 << 16;
    let threshold = gadget_threshold(6, 2)?;
    let tight = gadget_tight_strong(5, 2)?;
    let doubled = gadget_doubled_coordination(&Graph::path(5))?;
    let deletion = gadget_tree_deletion(&Graph::complete(4))?;
    let rows = [
        (
            "threshold(6,2)",
            threshold.certificate,
            brute_force_min_dcs(&threshold.instance, budget)?.weight,
        ),
        (
            "tight-strong(5,2)",
            tight.certificate,
            brute_force_min_dcs(&tight.instance, budget)?.weight,
        ),
        (
            "doubled P5",
            doubled.certificate,
            brute_force_min_dcs(&doubled.instance, budget)?.weight,
        ),
        (
            "tree deletion K4",
            deletion.certificate,
            brute_force_min_dcs(&deletion.instance, budget)?.weight,
        ),
    ];
    for (name, cert, brute) in rows {
        let cert = cert.expect("small gadgets are certified");
        println!(
            "{name}: certified {:?} ({}), brute force {brute}",
            cert.optimum_weight, cert.note
        );
    }
    Ok(())
}

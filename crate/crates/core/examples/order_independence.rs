//! Order independence on the dominating-set gadget: the empty set controls
//! everyone, but survives every partial switch only when the graph has no
//! small dominating set.

use dcs::gadgets::gadget_dominating_oi;
use dcs::instance::DEFAULT_ORDER_INDEPENDENCE_CAP;
use dcs::Graph;

pub fn main() -> dcs::Result<()> {
    for (name, graph, k) in [
        ("P3, k=1", Graph::path(3), 1),
        ("two isolated vertices, k=1", Graph::empty(2), 1),
        ("C5, k=1", Graph::cycle(5), 1),
        ("C5, k=2", Graph::cycle(5), 2),
    ] {
        let gadget = gadget_dominating_oi(&graph, k)?;
        let empty = gadget.instance.player_set([])?;
        println!(
            "{name}: domination number {}, empty set order-independent: {}",
            graph.domination_number(),
            gadget
                .instance
                .is_order_independent_dcs(&empty, DEFAULT_ORDER_INDEPENDENCE_CAP)?
        );
    }
    Ok(())
}

//! Runs every example program in-process so they stay working.

#[path = "../examples/bench_report.rs"]
mod bench_report;
#[path = "../examples/brute_force.rs"]
mod brute_force;
#[path = "../examples/coordination.rs"]
mod coordination;
#[path = "../examples/gadgets.rs"]
mod gadgets;
#[path = "../examples/hitting_set.rs"]
mod hitting_set;
#[path = "../examples/instance_files.rs"]
mod instance_files;
#[path = "../examples/local_ratio.rs"]
mod local_ratio;
#[path = "../examples/nash_search.rs"]
mod nash_search;
#[path = "../examples/order_independence.rs"]
mod order_independence;
#[path = "../examples/singleton_congestion.rs"]
mod singleton_congestion;
#[path = "../examples/strong_nash.rs"]
mod strong_nash;
#[path = "../examples/symmetric_congestion.rs"]
mod symmetric_congestion;
#[path = "../examples/tree_dp.rs"]
mod tree_dp;
#[path = "../examples/verify_dcs.rs"]
mod verify_dcs;

#[test]
fn bench_report_runs() {
    bench_report::main().unwrap();
}

#[test]
fn brute_force_runs() {
    brute_force::main().unwrap();
}

#[test]
fn coordination_runs() {
    coordination::main().unwrap();
}

#[test]
fn gadgets_runs() {
    gadgets::main().unwrap();
}

#[test]
fn hitting_set_runs() {
    hitting_set::main().unwrap();
}

#[test]
fn instance_files_runs() {
    instance_files::main().unwrap();
}

#[test]
fn local_ratio_runs() {
    local_ratio::main().unwrap();
}

#[test]
fn nash_search_runs() {
    nash_search::main().unwrap();
}

#[test]
fn order_independence_runs() {
    order_independence::main().unwrap();
}

#[test]
fn singleton_congestion_runs() {
    singleton_congestion::main().unwrap();
}

#[test]
fn strong_nash_runs() {
    strong_nash::main().unwrap();
}

#[test]
fn symmetric_congestion_runs() {
    symmetric_congestion::main().unwrap();
}

#[test]
fn tree_dp_runs() {
    tree_dp::main().unwrap();
}

#[test]
fn verify_dcs_runs() {
    verify_dcs::main().unwrap();
}

//! A short benchmark run printed as CSV.

use dcs::bench::{run_suite, to_csv, BenchSuite};

pub fn main() -> dcs::Result<()> {
    for suite in [
        BenchSuite::RandomSingleton,
        BenchSuite::RandomTree,
        BenchSuite::Coordination,
    ] {
        println!("# {suite}");
        print!("{}", to_csv(&run_suite(suite, 0..=3)?));
    }
    Ok(())
}

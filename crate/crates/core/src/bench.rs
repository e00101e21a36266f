//! Seeded benchmark suites comparing each class-specific solver with brute
//! force.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::congestion::singleton_min_dcs;
use crate::coordination::coordination_min_dcs;
use crate::error::{DcsError, Result};
use crate::game::Game;
use crate::instance::{DcsInstance, SolveReport};
use crate::random::{random_coordination, random_singleton_congestion, random_tree_pairwise};
use crate::solvers::{
    brute_force_min_dcs, local_ratio_dcs, InfluenceMap, DEFAULT_BRUTE_FORCE_BUDGET,
};
use crate::tree::{tree_dp_min_dcs, TreeDpOptions};

pub const SINGLETON_SIZE: (usize, usize) = (8, 3);
pub const TREE_SIZE: (usize, usize) = (10, 3);
pub const COORDINATION_SIZE: usize = 10;

pub const CSV_HEADER: &str = "seed,method,weight,optimum,oracle_calls,millis";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchSuite {
    RandomSingleton,
    RandomTree,
    Coordination,
}

impl FromStr for BenchSuite {
    type Err = DcsError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-singleton" => Ok(BenchSuite::RandomSingleton),
            "random-tree" => Ok(BenchSuite::RandomTree),
            "coordination" => Ok(BenchSuite::Coordination),
            _ => Err(DcsError::invalid(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for BenchSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchSuite::RandomSingleton => "random-singleton",
            BenchSuite::RandomTree => "random-tree",
            BenchSuite::Coordination => "coordination",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub seed: u64,
    pub method: String,
    pub weight: f64,
    /// Brute-force optimum of the same instance.
    pub optimum: Option<f64>,
    pub oracle_calls: u64,
    pub millis: f64,
}

impl BenchRow {
    fn from_report(seed: u64, report: &SolveReport, optimum: Option<f64>) -> Self {
        BenchRow {
            seed,
            method: report.method.to_string(),
            weight: report.weight,
            optimum,
            oracle_calls: report.stats.oracle_calls,
            millis: report.stats.wall_time.as_secs_f64() * 1e3,
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3}",
            self.seed,
            self.method,
            self.weight,
            self.optimum.map(|o| o.to_string()).unwrap_or_default(),
            self.oracle_calls,
            self.millis
        )
    }
}

pub fn parse_seed_range(text: &str) -> Result<RangeInclusive<u64>> {
    let bad = || DcsError::invalid(format!("seed range must look like A..B, got `{text}`"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (u64, u64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Runs `solvers` on one instance and prepends the brute-force row.
fn compare<G: Game + Sync>(
    seed: u64,
    instance: &DcsInstance<G>,
    solvers: &[&(dyn Fn(&DcsInstance<G>) -> Result<SolveReport> + Sync)],
) -> Result<Vec<BenchRow>> {
    let brute = brute_force_min_dcs(instance, DEFAULT_BRUTE_FORCE_BUDGET)?;
    let mut rows = vec![BenchRow::from_report(seed, &brute, Some(brute.weight))];
    for solve in solvers {
        match solve(instance) {
            Ok(r) => rows.push(BenchRow::from_report(seed, &r, Some(brute.weight))),
            Err(e @ DcsError::PreconditionViolated(_)) => log::warn!("seed {seed}: skipped ({e})"),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

fn run_seed(suite: BenchSuite, seed: u64) -> Result<Vec<BenchRow>> {
    match suite {
        BenchSuite::RandomSingleton => {
            let (n, m) = SINGLETON_SIZE;
            let instance = random_singleton_congestion(n, m, true, seed)?;
            compare(seed, &instance, &[&singleton_min_dcs])
        }
        BenchSuite::RandomTree => {
            let (n, k) = TREE_SIZE;
            let instance = random_tree_pairwise(n, k, seed)?;
            let dp = |i: &DcsInstance<_>| tree_dp_min_dcs(i, 0, TreeDpOptions::default());
            let lr = |i: &DcsInstance<crate::tree::GraphicalGame>| {
                let infl = InfluenceMap::from_sets(
                    i.game()
                        .influence_sets()
                        .expect("graphical games know them"),
                )?;
                local_ratio_dcs(i, &infl)
            };
            compare(seed, &instance, &[&dp, &lr])
        }
        BenchSuite::Coordination => {
            let instance = random_coordination(COORDINATION_SIZE, seed)?;
            let greedy = |i: &DcsInstance<_>| coordination_min_dcs(i, false);
            let exact = |i: &DcsInstance<_>| coordination_min_dcs(i, true);
            compare(seed, &instance, &[&greedy, &exact])
        }
    }
}

/// Rows ordered by seed, then brute force first.
pub fn run_suite(suite: BenchSuite, seeds: RangeInclusive<u64>) -> Result<Vec<BenchRow>> {
    let per_seed: Vec<Result<Vec<BenchRow>>> =
        seeds.into_par_iter().map(|s| run_seed(suite, s)).collect();
    let mut rows = Vec::new();
    for r in per_seed {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seed_range("3..5").unwrap(), 3..=5);
        assert!(parse_seed_range("5..3").is_err());
        assert!(parse_seed_range("5").is_err());
    }

    #[test]
    fn exact_methods_match_brute_force() {
        for suite in [
            BenchSuite::RandomTree,
            BenchSuite::Coordination,
            BenchSuite::RandomSingleton,
        ] {
            let rows = run_suite(suite, 0..=2).unwrap();
            for r in &rows {
                let opt = r.optimum.unwrap();
                if r.method.contains("greedy") || r.method == "local-ratio" {
                    assert!(r.weight >= opt - 1e-9);
                } else {
                    assert!((r.weight - opt).abs() < 1e-9, "{suite} {r:?}");
                }
            }
            let csv = to_csv(&rows);
            assert!(csv.starts_with(CSV_HEADER));
            assert_eq!(csv.lines().count(), rows.len() + 1);
        }
    }
}

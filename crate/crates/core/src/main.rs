use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::warn;
use serde_json::json;

use dcs::bench::{parse_seed_range, run_suite, to_csv, BenchSuite};
use dcs::congestion::{singleton_min_dcs, symmetric_decreasing_min_dcs, SingletonCongestionGame};
use dcs::coordination::coordination_min_dcs;
use dcs::gadgets::{
    gadget_dominating_oi, gadget_doubled_coordination, gadget_threshold, gadget_tight_strong,
    gadget_tree_deletion, Certificate, CertifiedInstance,
};
use dcs::game::{strength, DEFAULT_COALITION_BUDGET};
use dcs::instance::DEFAULT_ORDER_INDEPENDENCE_CAP;
use dcs::io::{read_instance, serialize_instance};
use dcs::solvers::{
    brute_force_min_dcs, incremental_min_dcs, influence_map, local_ratio_dcs,
    singleton_hitting_min_dcs, HittingMode, DEFAULT_BRUTE_FORCE_BUDGET, DEFAULT_ORDERING_BUDGET,
    DEFAULT_PERTURBATION_BUDGET,
};
use dcs::tree::{tree_dp_min_dcs, TreeDpOptions};
use dcs::{AnyGame, DcsError, DcsInstance, Game, Graph, Profile, Result, SolveReport};

#[derive(Parser)]
#[command(
    name = "dcs",
    version,
    about = "Find and check direct control sets of strategic games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a player set is a direct control set.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated player indices; empty for the empty set.
        #[arg(long, default_value = "")]
        set: String,
        /// Also require the set to work whatever subset of the others has
        /// already switched.
        #[arg(long)]
        order_independent: bool,
        /// Only check that the set brings this player to the target.
        #[arg(long, value_name = "K")]
        per_player: Option<usize>,
    },
    /// Compute a direct control set.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        method: SolveMethod,
        /// Subset cap for brute force and profile cap for influence discovery.
        #[arg(long)]
        budget: Option<u128>,
        /// Number of orderings for the incremental method.
        #[arg(long, default_value_t = DEFAULT_ORDERING_BUDGET)]
        orderings: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Root for the tree dynamic program.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Use exact k-domination for the coordination method.
        #[arg(long)]
        exact: bool,
        /// Run brute force when the chosen method's preconditions fail.
        #[arg(long)]
        fallback_brute: bool,
    },
    /// Write a gadget instance.
    Gadget {
        #[arg(long, value_enum)]
        name: GadgetName,
        /// Edge list, one `u v` pair per line, 0-based.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest k for which a profile is a k-strong equilibrium.
    Strength {
        #[arg(long)]
        instance: PathBuf,
        /// `s`, `d`, or comma-separated strategy indices.
        #[arg(long, default_value = "d")]
        profile: String,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_COALITION_BUDGET)]
        budget: u128,
    },
    /// Run a seeded benchmark suite.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Inclusive range such as `0..9`.
        #[arg(long, default_value = "0..9")]
        seeds: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        report: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Brute,
    Incremental,
    LocalRatio,
    TreeDp,
    Singleton,
    Symmetric,
    Coordination,
    Hitting,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetName {
    DominatingOi,
    DoubledCoordination,
    TreeDeletion,
    Threshold,
    TightStrong,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    RandomSingleton,
    RandomTree,
    Coordination,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
}

/// Verdict of a command that completed: `false` maps to exit code 1.
type Verdict = bool;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Verify {
            instance,
            set,
            order_independent,
            per_player,
        } => verify(instance, &set, order_independent, per_player),
        Command::Solve {
            instance,
            method,
            budget,
            orderings,
            seed,
            root,
            exact,
            fallback_brute,
        } => {
            let loaded = read_instance(instance)?;
            let options = SolveOptions {
                budget,
                orderings,
                seed,
                root,
                exact,
            };
            let report = match solve(&loaded.instance, method, &options) {
                Err(
                    e @ (DcsError::PreconditionViolated(_)
                    | DcsError::Unsupported(_)
                    | DcsError::NotATree(_)),
                ) if fallback_brute => {
                    warn!("{e}; falling back to brute force");
                    solve(&loaded.instance, SolveMethod::Brute, &options)?
                }
                other => other?,
            };
            if !report.feasible || !loaded.instance.is_direct_control_set(&report.solution)? {
                return Err(DcsError::Internal(format!(
                    "{} returned an infeasible set",
                    report.method
                )));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
            Ok(true)
        }
        Command::Gadget {
            name,
            graph,
            k,
            n,
            p,
            m,
            output,
        } => {
            let bytes = gadget(name, graph, k, n, p, m)?;
            match output {
                Some(path) => fs::write(&path, bytes).map_err(|e| {
                    DcsError::InvalidInput(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{}", String::from_utf8_lossy(&bytes)),
            }
            Ok(true)
        }
        Command::Strength {
            instance,
            profile,
            kmax,
            budget,
        } => {
            let loaded = read_instance(instance)?;
            let inst = &loaded.instance;
            let profile = match profile.as_str() {
                "s" | "start" => inst.start().clone(),
                "d" | "target" => inst.target().clone(),
                list => Profile(parse_indices(list)?),
            };
            let k = strength(inst.game(), &profile, kmax.unwrap_or(inst.n()), budget)?;
            println!("{k}");
            Ok(true)
        }
        Command::Bench {
            suite,
            seeds,
            report: ReportFormat::Csv,
            output,
        } => {
            let suite = match suite {
                Suite::RandomSingleton => BenchSuite::RandomSingleton,
                Suite::RandomTree => BenchSuite::RandomTree,
                Suite::Coordination => BenchSuite::Coordination,
            };
            let csv = to_csv(&run_suite(suite, parse_seed_range(&seeds)?)?);
            match output {
                Some(path) => fs::write(&path, csv).map_err(|e| {
                    DcsError::InvalidInput(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| DcsError::InvalidInput(format!("`{t}` is not an index")))
        })
        .collect()
}

fn verify(
    path: PathBuf,
    set: &str,
    order_independent: bool,
    per_player: Option<usize>,
) -> Result<Verdict> {
    let loaded = read_instance(path)?;
    let inst = &loaded.instance;
    let set = inst.player_set(parse_indices(set)?)?;
    let dcs = inst.is_direct_control_set(&set)?;
    let mut out =
        json!({ "set": set.members(), "weight": set.weight(), "direct_control_set": dcs });
    let mut verdict = dcs;
    if order_independent {
        let oi = dcs && inst.is_order_independent_dcs(&set, DEFAULT_ORDER_INDEPENDENCE_CAP)?;
        out["order_independent"] = json!(oi);
        verdict = oi;
    }
    if let Some(k) = per_player {
        let ok = inst.is_dcs_for_player(&set, k)?;
        out["per_player"] = json!({ "player": k, "controlled": ok });
        verdict = ok;
    }
    println!("{out}");
    Ok(verdict)
}

struct SolveOptions {
    budget: Option<u128>,
    orderings: u64,
    seed: u64,
    root: usize,
    exact: bool,
}

/// Rebuilds the instance around a concrete game type.
fn retype<G: Game>(inst: &DcsInstance<AnyGame>, game: G) -> Result<DcsInstance<G>> {
    DcsInstance::new(
        game,
        inst.start().clone(),
        inst.target().clone(),
        inst.weights().to_vec(),
    )
}

fn wrong_class(method: &str, game: &AnyGame) -> DcsError {
    DcsError::Unsupported(format!(
        "method {method} does not apply to {} instances",
        game.kind()
    ))
}

fn solve(
    inst: &DcsInstance<AnyGame>,
    method: SolveMethod,
    o: &SolveOptions,
) -> Result<SolveReport> {
    let game = inst.game();
    match method {
        SolveMethod::Brute => {
            brute_force_min_dcs(inst, o.budget.unwrap_or(DEFAULT_BRUTE_FORCE_BUDGET))
        }
        SolveMethod::Incremental => incremental_min_dcs(inst, o.orderings, o.seed),
        SolveMethod::LocalRatio => {
            let infl = influence_map(game, o.budget.unwrap_or(DEFAULT_PERTURBATION_BUDGET))?;
            local_ratio_dcs(inst, &infl)
        }
        SolveMethod::Hitting => singleton_hitting_min_dcs(inst, HittingMode::Auto, true),
        SolveMethod::TreeDp => match game {
            AnyGame::Graphical(g) => {
                tree_dp_min_dcs(&retype(inst, g.clone())?, o.root, TreeDpOptions::default())
            }
            _ => Err(wrong_class("tree-dp", game)),
        },
        SolveMethod::Singleton => {
            let scg = match game {
                AnyGame::SingletonCongestion(g) => g.clone(),
                AnyGame::Congestion(g) => SingletonCongestionGame::from_congestion(g)?,
                _ => return Err(wrong_class("singleton", game)),
            };
            singleton_min_dcs(&retype(inst, scg)?)
        }
        SolveMethod::Symmetric => match game {
            AnyGame::Congestion(g) => symmetric_decreasing_min_dcs(&retype(inst, g.clone())?),
            AnyGame::SingletonCongestion(g) => {
                symmetric_decreasing_min_dcs(&retype(inst, g.to_congestion())?)
            }
            _ => Err(wrong_class("symmetric", game)),
        },
        SolveMethod::Coordination => match game {
            AnyGame::Coordination(g) => coordination_min_dcs(&retype(inst, g.clone())?, o.exact),
            _ => Err(wrong_class("coordination", game)),
        },
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| DcsError::InvalidInput(format!("this gadget needs --{flag}")))
}

fn read_graph(path: Option<PathBuf>) -> Result<Graph> {
    let path = require(path, "graph")?;
    let text = fs::read_to_string(&path)
        .map_err(|e| DcsError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse_edge_list(&text, 0)
}

fn any<G: Game + Into<AnyGame>>(
    c: CertifiedInstance<G>,
) -> Result<(DcsInstance<AnyGame>, Option<Certificate>)> {
    Ok((c.instance.map_game(Into::into)?, c.certificate))
}

fn gadget(
    name: GadgetName,
    graph: Option<PathBuf>,
    k: Option<usize>,
    n: Option<usize>,
    p: Option<usize>,
    m: Option<usize>,
) -> Result<Vec<u8>> {
    let (inst, cert) = match name {
        GadgetName::DominatingOi => {
            any(gadget_dominating_oi(&read_graph(graph)?, require(k, "k")?)?)?
        }
        GadgetName::DoubledCoordination => any(gadget_doubled_coordination(&read_graph(graph)?)?)?,
        GadgetName::TreeDeletion => any(gadget_tree_deletion(&read_graph(graph)?)?)?,
        GadgetName::Threshold => any(gadget_threshold(require(n, "n")?, require(p, "p")?)?)?,
        GadgetName::TightStrong => any(gadget_tight_strong(require(n, "n")?, require(m, "m")?)?)?,
    };
    Ok(serialize_instance(&inst, cert.as_ref()))
}

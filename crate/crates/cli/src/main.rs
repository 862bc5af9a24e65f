//! rtlab: command-line surface for the Ramsey-Turán density toolkit.
//!
//! Subcommands map onto the library modules: `density`, `profiles`,
//! `optimize`, `symmetrize`, `skeleton`, `oracle`, `be`, `counterexample`,
//! `part-bounds`, and `table`. Every run prints its resolved configuration to
//! stderr and writes results as JSON (or CSV for `table`) to stdout or
//! `--out`. Exit codes: 0 success, 1 input error, 2 verification failure.

use clap::{Args, Parser, Subcommand};
use rtlab_core::error::Error;
use rtlab_core::profile::{
    candidate_profiles, optimize_sizes, Profile, PruningFlags, SizeAssignment,
};
use rtlab_core::ratio::{format_ratio, parse_ratio};
use rtlab_core::skeleton::max_skeleton_value;
use rtlab_core::solver::{
    counterexample_search, density_table, rt_density_opts, verify_part_bounds,
    CounterexampleSearch, DensityResult, PartBoundRegime,
};
use rtlab_core::symmetrize::zykov_reduce;
use rtlab_core::wgraph::WeightedGraph;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rtlab",
    version,
    about = "Ramsey-Turán clique density toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    /// Worker threads (default: RTLAB_JOBS or all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Limiting q-clique density over p-skeleton-free graphs.
    Density(DensityArgs),
    /// Candidate profiles for given q and p.
    Profiles(ProfilesArgs),
    /// Optimize part sizes for one profile.
    Optimize(OptimizeArgs),
    /// Reduce a weighted graph to a profile graph.
    Symmetrize(SymmetrizeArgs),
    /// Maximum skeleton value of a weighted graph.
    Skeleton(SkeletonArgs),
    /// Exhaustive small-n search over weighted graphs.
    Oracle(OracleArgs),
    /// Build a geometric construction and measure it.
    Be(BeArgs),
    /// Search for a conjecture counterexample certificate.
    Counterexample(CounterexampleArgs),
    /// Part-count lower-bound check.
    PartBounds(PartBoundsArgs),
    /// Density grid as CSV.
    Table(TableArgs),
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    p: usize,
    /// Also consider profiles with s + t < p - 1.
    #[arg(long)]
    loose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProfilesArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    p: usize,
    /// Pruning preset: none, full, or loose.
    #[arg(long, default_value = "none")]
    pruning: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Profile as comma-separated cells per part, e.g. "2,2,1".
    #[arg(long, conflicts_with = "input")]
    parts: Option<String>,
    /// Profile JSON file {"parts": [...]}.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SymmetrizeArgs {
    /// Graph JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    p: usize,
    /// Write the reduction trace to this JSON file.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SkeletonArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also report p-skeleton-freeness for this order.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    p: usize,
    /// Dump up to this many maximizing graphs.
    #[arg(long, default_value_t = 0)]
    witnesses: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Total cells.
    #[arg(long)]
    s: usize,
    /// Parts.
    #[arg(long)]
    t: usize,
    /// Part shares as comma-separated rationals, e.g. "1/3,1/3,1/3"
    /// (default: uniform).
    #[arg(long)]
    sizes: Option<String>,
    /// Census clique sizes up to this bound.
    #[arg(long, default_value_t = 4)]
    qmax: usize,
    /// Search-node cap for the census.
    #[arg(long, default_value_t = 1 << 28)]
    cap: u64,
    /// Write the simple graph JSON here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the points sidecar JSON here.
    #[arg(long)]
    points_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long)]
    k: usize,
    /// Density margin, e.g. "1/100".
    #[arg(long)]
    c: String,
    #[arg(long, default_value_t = 512)]
    qmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartBoundsArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    q_min: usize,
    #[arg(long, default_value_t = 5)]
    q_max: usize,
    #[arg(long, default_value_t = 4)]
    p_min: usize,
    #[arg(long, default_value_t = 14)]
    p_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("RTLAB_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(j) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    match run(cli.command, jobs) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ContractViolation(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn config_line(parts: &[(&str, String)]) {
    let rendered: Vec<String> = parts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("rtlab config: {}", rendered.join(" "));
}

fn density_json(r: &DensityResult) -> Value {
    json!({
        "q": r.q,
        "p": r.p,
        "best_profile": r.best_profile.parts(),
        "ties": r.ties.iter().map(|t| t.parts().to_vec()).collect::<Vec<_>>(),
        "assignment": r.assignment.to_strings(),
        "value": r.value.value,
        "exact": r.value.exact_string(),
        "open_region": r.open_region,
        "closed_form": r.closed_form.as_ref().map(|m| json!({
            "id": m.form.id,
            "value": m.form.value,
            "exact": m.form.exact.as_ref().map(format_ratio),
            "difference": m.difference,
            "matches": m.matches,
        })),
    })
}

fn run(cmd: Command, jobs: Option<usize>) -> Result<(), Error> {
    let jobs_str = jobs.map_or("auto".to_string(), |j| j.to_string());
    match cmd {
        Command::Density(a) => {
            config_line(&[
                ("command", "density".into()),
                ("q", a.q.to_string()),
                ("p", a.p.to_string()),
                ("loose", a.loose.to_string()),
                ("jobs", jobs_str),
            ]);
            let r = rt_density_opts(a.q, a.p, a.loose)?;
            emit(&a.out, &serde_json::to_string_pretty(&density_json(&r))?)
        }
        Command::Profiles(a) => {
            config_line(&[
                ("command", "profiles".into()),
                ("q", a.q.to_string()),
                ("p", a.p.to_string()),
                ("pruning", a.pruning.clone()),
                ("jobs", jobs_str),
            ]);
            let flags = match a.pruning.as_str() {
                "none" => PruningFlags::none(),
                "full" => PruningFlags::full(a.q),
                "loose" => PruningFlags::loose(),
                other => return Err(Error::invalid(format!("unknown pruning preset {other:?}"))),
            };
            let profiles = candidate_profiles(a.q, a.p, flags);
            let body = json!({
                "q": a.q,
                "p": a.p,
                "pruning": a.pruning,
                "profiles": profiles.iter().map(|pr| pr.parts().to_vec()).collect::<Vec<_>>(),
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Optimize(a) => {
            let profile = match (&a.parts, &a.input) {
                (Some(parts), None) => {
                    let parsed: Result<Vec<usize>, _> = parts
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect();
                    Profile::new(parsed.map_err(|e| Error::invalid(format!("bad --parts: {e}")))?)?
                }
                (None, Some(path)) => Profile::from_json(&read_file(path)?)?,
                _ => {
                    return Err(Error::invalid(
                        "optimize needs exactly one of --parts or --in",
                    ))
                }
            };
            config_line(&[
                ("command", "optimize".into()),
                ("profile", profile.to_string()),
                ("q", a.q.to_string()),
                ("jobs", jobs_str),
            ]);
            let (assignment, value) = optimize_sizes(&profile, a.q)?;
            let body = json!({
                "profile": profile.parts(),
                "q": a.q,
                "assignment": assignment.to_strings(),
                "value": value.value,
                "exact": value.exact_string(),
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Symmetrize(a) => {
            config_line(&[
                ("command", "symmetrize".into()),
                ("in", a.input.display().to_string()),
                ("q", a.q.to_string()),
                ("p", a.p.to_string()),
                ("jobs", jobs_str),
            ]);
            let g = WeightedGraph::from_json(&read_file(&a.input)?)?;
            let red = zykov_reduce(&g, a.q, a.p)?;
            if let Some(path) = &a.trace {
                std::fs::write(path, red.trace.to_json())
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            emit(&a.out, &red.graph.to_json())?;
            eprintln!(
                "rtlab symmetrize: profile {} steps {} N_q {} -> {}",
                red.profile,
                red.trace.steps.len(),
                g.count_cliques(a.q)?.to_exact_string(),
                red.graph.count_cliques(a.q)?.to_exact_string(),
            );
            Ok(())
        }
        Command::Skeleton(a) => {
            config_line(&[
                ("command", "skeleton".into()),
                ("in", a.input.display().to_string()),
                ("p", a.p.map_or("-".into(), |p| p.to_string())),
                ("jobs", jobs_str),
            ]);
            let g = WeightedGraph::from_json(&read_file(&a.input)?)?;
            let (value, witness) = max_skeleton_value(&g);
            let body = json!({
                "n": g.n(),
                "value": value,
                "witness": {"x": witness.x, "y": witness.y},
                "skeleton_free": a.p.map(|p| value < p),
                "p": a.p,
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Oracle(a) => {
            config_line(&[
                ("command", "oracle".into()),
                ("n", a.n.to_string()),
                ("q", a.q.to_string()),
                ("p", a.p.to_string()),
                ("witnesses", a.witnesses.to_string()),
                ("jobs", jobs_str),
            ]);
            let (report, witnesses) =
                rtlab_core::oracle::brute_force_with_witnesses(a.n, a.q, a.p, a.witnesses)?;
            let body = json!({
                "n": report.n,
                "q": report.q,
                "p": report.p,
                "max_value": report.max_value.to_exact_string(),
                "max_value_decimal": report.max_value.to_f64(),
                "witness_count": report.witness_count,
                "profile_witness": report.profile_witness.as_ref().map(|w| w.parts().to_vec()),
                "graphs_scanned": report.graphs_scanned,
                "witnesses": witnesses
                    .iter()
                    .map(|w| serde_json::from_str::<Value>(&w.to_json()).expect("graph json"))
                    .collect::<Vec<_>>(),
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Be(a) => {
            config_line(&[
                ("command", "be".into()),
                ("d", a.d.to_string()),
                ("n", a.n.to_string()),
                ("eps", a.eps.to_string()),
                ("seed", a.seed.to_string()),
                ("s", a.s.to_string()),
                ("t", a.t.to_string()),
                ("qmax", a.qmax.to_string()),
                ("jobs", jobs_str),
            ]);
            let cfg = rtlab_core::be::SphereConfig {
                d: a.d,
                n: a.n,
                eps: a.eps,
                seed: a.seed,
            };
            let sizes = match &a.sizes {
                Some(text) => {
                    let entries: Vec<String> =
                        text.split(',').map(|e| e.trim().to_string()).collect();
                    SizeAssignment::parse_entries(&entries)?
                }
                None => SizeAssignment::uniform(a.t),
            };
            let g = rtlab_core::be::build_construction(&cfg, a.s, a.t, &sizes)?;
            let census = rtlab_core::be::clique_census(&g, a.qmax, a.cap)?;
            let report = rtlab_core::be::structural_report(&g);
            if let Some(path) = &a.graph_out {
                std::fs::write(path, g.to_graph_json())
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            if let Some(path) = &a.points_out {
                std::fs::write(path, g.to_points_json())
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            let body = json!({
                "n": g.n(),
                "mu": g.mu,
                "cells": g.cells(),
                "parts": g.parts(),
                "census": {
                    "counts": census.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "omega": census.omega,
                },
                "report": serde_json::from_str::<Value>(&report.to_json())?,
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Counterexample(a) => {
            config_line(&[
                ("command", "counterexample".into()),
                ("k", a.k.to_string()),
                ("c", a.c.clone()),
                ("qmax", a.qmax.to_string()),
                ("jobs", jobs_str),
            ]);
            let c = parse_ratio(&a.c)?;
            let outcome = counterexample_search(a.k, &c, a.qmax)?;
            let body = match outcome {
                CounterexampleSearch::Found(cert) => json!({
                    "found": true,
                    "k": cert.k,
                    "q": cert.q,
                    "lhs": format_ratio(&cert.lhs),
                    "rhs": format_ratio(&cert.rhs),
                    "conjectured_profile": cert.conjectured.parts(),
                    "alternative_profile": cert.alternative.parts(),
                    "gap": cert.gap,
                    "gap_required": cert.gap_required,
                }),
                CounterexampleSearch::NotFoundBelow(bound) => json!({
                    "found": false,
                    "q_max": bound,
                }),
            };
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::PartBounds(a) => {
            config_line(&[
                ("command", "part-bounds".into()),
                ("q", a.q.to_string()),
                ("p", a.p.to_string()),
                ("c", a.c.to_string()),
                ("jobs", jobs_str),
            ]);
            let outcome = verify_part_bounds(a.q, a.p, a.c);
            let regime = match outcome.regime {
                PartBoundRegime::LargeP => "large-p",
                PartBoundRegime::SmallOffset => "small-offset",
                PartBoundRegime::OutOfRange => "out-of-range",
            };
            let body = json!({
                "q": a.q,
                "p": a.p,
                "c": a.c,
                "holds": outcome.holds,
                "regime": regime,
                "min_parts": outcome.min_parts,
                "required": outcome.required,
            });
            emit(&a.out, &serde_json::to_string_pretty(&body)?)
        }
        Command::Table(a) => {
            config_line(&[
                ("command", "table".into()),
                ("q", format!("{}..={}", a.q_min, a.q_max)),
                ("p", format!("{}..={}", a.p_min, a.p_max)),
                ("jobs", jobs_str),
            ]);
            let rows = density_table((a.q_min, a.q_max), (a.p_min, a.p_max))?;
            let mut csv = String::from("q,p,profile,assignment,value,closed_form,match\n");
            for r in rows {
                let closed = r.closed_form.map_or(String::new(), |v| format!("{v:.15}"));
                let flag = match r.matches {
                    Some(true) => "true",
                    Some(false) => "false",
                    None => "open",
                };
                csv.push_str(&format!(
                    "{},{},{},{},{:.15},{},{}\n",
                    r.q,
                    r.p,
                    r.profile.replace(',', "+"),
                    r.assignment,
                    r.value,
                    closed,
                    flag
                ));
            }
            emit(&a.out, csv.trim_end())
        }
    }
}

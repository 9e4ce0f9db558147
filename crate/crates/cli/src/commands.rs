use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use leafspan::certificate::Certificate;
use leafspan::graph::Graph;
use leafspan::graph6::encode_graph6;
use leafspan::hypothesis::HypothesisReport;
use leafspan::leafmin::{solve_with, Solution, SolveOptions};
use leafspan::oracle::{exhaustive_sweep, min_leaf_spanning_tree, random_sweep, SweepSummary};
use leafspan::tree::SpanningTree;
use serde_json::json;

use crate::input::{generate as generate_graph, load};
use crate::{FamilyArgs, Format, GraphArgs, ValidateArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InputError = 1,
    /// Hypotheses fail, the instance is refuted, or a sweep found violations.
    Negative = 2,
}

fn graph6_of(g: &Graph) -> String {
    encode_graph6(g).unwrap_or_else(|_| "(too large for graph6)".into())
}

fn record(value: serde_json::Value) {
    println!("{value}");
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::InducedStarFound(star) => {
            format!(
                "induced K1,5 with center {} and leaves {:?}",
                star.center, star.leaves
            )
        }
        Certificate::LowSigmaWitness {
            vertices,
            degree_sum,
        } => {
            format!("independent set {vertices:?} with degree sum {degree_sum}")
        }
        Certificate::Disconnected { component } => {
            format!("component {component:?} has no outgoing edge")
        }
    }
}

pub fn check(args: &GraphArgs) -> Result<Status, String> {
    let g = load(args)?;
    if g.n() == 0 {
        return Err("graph has no vertices".into());
    }
    let report = HypothesisReport::compute(&g);
    let verdict = report.verdict();
    let status = if verdict.holds() {
        Status::Success
    } else {
        Status::Negative
    };
    match args.format {
        Format::Records => record(json!({
            "record": "check",
            "graph6": graph6_of(&g),
            "n": g.n(),
            "edges": g.edge_count(),
            "connected": report.connectivity.is_connected(),
            "induced_star": report.induced_star,
            "sigma5": report.sigma5.value,
            "sigma5_witness": report.sigma5.witness,
            "threshold": g.n() - 1,
            "verdict": verdict,
        })),
        Format::Human => {
            println!("n = {}, {} edges", g.n(), g.edge_count());
            println!(
                "connected: {}",
                if report.connectivity.is_connected() {
                    "yes"
                } else {
                    "no"
                }
            );
            match &report.induced_star {
                Some(star) => println!(
                    "induced K1,5: center {} leaves {:?}",
                    star.center, star.leaves
                ),
                None => println!("induced K1,5: none"),
            }
            match &report.sigma5.witness {
                Some(w) => println!(
                    "sigma_5 = {} (witness {w:?}); n - 1 = {}",
                    report.sigma5.value,
                    g.n() - 1
                ),
                None => println!("sigma_5 = {}; n - 1 = {}", report.sigma5.value, g.n() - 1),
            }
            println!(
                "hypotheses: {}",
                if verdict.holds() { "hold" } else { "fail" }
            );
        }
    }
    Ok(status)
}

pub fn solve(args: &GraphArgs, trace_path: Option<&Path>) -> Result<Status, String> {
    let g = load(args)?;
    if g.n() == 0 {
        return Err("graph has no vertices".into());
    }
    let report = solve_with(
        &g,
        SolveOptions {
            trace: trace_path.is_some(),
        },
    )
    .map_err(|e| e.to_string())?;
    if let Some(path) = trace_path {
        let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut out = BufWriter::new(file);
        for step in &report.trace {
            let line = serde_json::to_string(step).map_err(|e| e.to_string())?;
            writeln!(out, "{line}").map_err(|e| e.to_string())?;
        }
        out.flush().map_err(|e| e.to_string())?;
    }
    match &report.solution {
        Solution::Tree(tree) => {
            print_tree(&g, tree, report.moves, args.format);
            Ok(Status::Success)
        }
        Solution::Refuted(certificate) => {
            match args.format {
                Format::Records => record(json!({
                    "record": "refuted",
                    "graph6": graph6_of(&g),
                    "claim": report.certificate_tag,
                    "certificate": certificate,
                })),
                Format::Human => {
                    println!("refuted: {}", describe_certificate(certificate));
                    if let Some(tag) = report.certificate_tag {
                        println!("found by: {tag}");
                    }
                    println!("replay: leafspan check --graph6 '{}'", graph6_of(&g));
                }
            }
            Ok(Status::Negative)
        }
    }
}

fn print_tree(g: &Graph, tree: &SpanningTree<'_>, moves: u64, format: Format) {
    let leaves = tree.leaf_count();
    let branches = tree.branch_vertices().len();
    match format {
        Format::Records => record(json!({
            "record": "tree",
            "graph6": graph6_of(g),
            "leaves": leaves,
            "branch_vertices": branches,
            "moves": moves,
            "edges": tree.edges(),
        })),
        Format::Human => {
            println!("spanning tree: {leaves} leaves, {branches} branch vertices, {moves} moves");
            print!("{}", tree.to_edge_list());
        }
    }
}

pub fn oracle(args: &GraphArgs, budget: u64) -> Result<Status, String> {
    let g = load(args)?;
    if g.n() > leafspan::oracle::ORACLE_MAX_N {
        return Err(format!(
            "the oracle handles at most {} vertices",
            leafspan::oracle::ORACLE_MAX_N
        ));
    }
    let report = min_leaf_spanning_tree(&g, budget).map_err(|e| e.to_string())?;
    match args.format {
        Format::Records => record(json!({
            "record": "oracle",
            "graph6": graph6_of(&g),
            "min_leaves": report.min_leaves,
            "trees_enumerated": report.trees_enumerated,
            "witness": report.witness.edges(),
        })),
        Format::Human => {
            println!(
                "min_leaves = {} ({} trees enumerated)",
                report.min_leaves, report.trees_enumerated
            );
            print!("{}", report.witness.to_edge_list());
        }
    }
    Ok(Status::Success)
}

pub fn validate(args: &ValidateArgs) -> Result<Status, String> {
    let summary = match (args.exhaustive, args.random, args.samples) {
        (Some(n), None, _) if n <= 8 => exhaustive_sweep(n),
        (Some(n), None, _) => return Err(format!("exhaustive sweeps stop at 8 vertices, got {n}")),
        (None, Some(n), Some(samples)) if n <= 200 => {
            if n < 6 && samples > 0 {
                return Err("random instances need at least 6 vertices".into());
            }
            random_sweep(n, samples, args.seed)
        }
        (None, Some(n), _) => return Err(format!("random sweeps stop at 200 vertices, got {n}")),
        _ => return Err("give --exhaustive N, or --random N with --samples K".into()),
    };
    print_summary(&summary, args.format)?;
    Ok(if summary.is_clean() {
        Status::Success
    } else {
        Status::Negative
    })
}

fn print_summary(s: &SweepSummary, format: Format) -> Result<(), String> {
    match format {
        Format::Records => {
            let mut head = serde_json::to_value(s).map_err(|e| e.to_string())?;
            head["record"] = json!("summary");
            head.as_object_mut().map(|o| o.remove("violations"));
            record(head);
            for v in &s.violations {
                let mut line = serde_json::to_value(v).map_err(|e| e.to_string())?;
                line["record"] = json!("violation");
                record(line);
            }
        }
        Format::Human => {
            println!(
                "n = {}: {} graphs, {} connected",
                s.n, s.graphs_scanned, s.connected
            );
            println!(
                "hypotheses hold on {}; solver trees {} ({} under hypotheses), refutations {}",
                s.hypotheses_held, s.solver_trees, s.trees_under_hypotheses, s.solver_refutations
            );
            println!(
                "oracle checks {}, sigma checks {}, max moves {}, max leaves {}, max branch vertices {}",
                s.oracle_checked, s.sigma_checked, s.max_moves, s.max_tree_leaves, s.max_branch_vertices
            );
            println!("violations: {}", s.violation_count);
            for v in &s.violations {
                println!("  {v}");
            }
        }
    }
    Ok(())
}

pub fn generate(args: &FamilyArgs, format: Format) -> Result<Status, String> {
    let g = generate_graph(args)?;
    let g6 = encode_graph6(&g).map_err(|e| e.to_string())?;
    match format {
        Format::Records => {
            record(json!({ "record": "graph", "n": g.n(), "edges": g.edge_count(), "graph6": g6 }))
        }
        Format::Human => println!("{g6}"),
    }
    Ok(Status::Success)
}

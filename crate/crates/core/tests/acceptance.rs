//! Acceptance suite: one pass/fail line per criterion, nonzero exit on
//! any failure. Runs without the libtest harness so the lines always show.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use leafspan::certificate::Certificate;
use leafspan::families::sharpness_graph;
use leafspan::graph::is_connected;
use leafspan::hypothesis::{find_induced_star, sigma_k, DegreeSum};
use leafspan::leafmin::{iteration_limit, solve_with, Solution, SolveOptions};
use leafspan::oracle::{
    check_instance, exhaustive_sweep, labeled_graph, min_leaf_spanning_tree, random_sweep,
    SweepChecks, SweepSummary, ViolationKind, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Runs {
    /// Exhaustive sweeps for n = 1..=7, index n − 1.
    exhaustive: Vec<SweepSummary>,
    random40: SweepSummary,
    random12: SweepSummary,
    sample8: SweepSummary,
}

fn kinds_clean(s: &SweepSummary, kinds: &[ViolationKind]) -> bool {
    let kept_all = s.violation_count as usize == s.violations.len();
    kept_all && !s.violations.iter().any(|v| kinds.contains(&v.kind))
}

fn describe(s: &SweepSummary) -> String {
    match s.violations.first() {
        Some(v) => format!("n = {}: {} violations, first {v}", s.n, s.violation_count),
        None => format!("n = {}: clean", s.n),
    }
}

fn criterion_1(r: &Runs) -> Result<String, String> {
    let s = &r.exhaustive[6];
    if s.graphs_scanned != 1 << 21 {
        return Err(format!("scanned {} graphs", s.graphs_scanned));
    }
    if !s.is_clean() || s.trees_under_hypotheses != s.hypotheses_held || s.max_tree_leaves > 4 {
        return Err(describe(s));
    }
    Ok(format!(
        "{} graphs, {} connected, {} satisfy the hypotheses, all solved with <= 4 leaves",
        s.graphs_scanned, s.connected, s.hypotheses_held
    ))
}

fn criterion_2() -> Result<String, String> {
    for m in 1..=10 {
        let g = sharpness_graph(m);
        let n = g.n();
        if n != 5 * m + 2 || !is_connected(&g).is_connected() || find_induced_star(&g, 5).is_some()
        {
            return Err(format!(
                "m = {m}: construction is not a connected K_(1,5)-free graph"
            ));
        }
        if sigma_k(&g, 5).value != DegreeSum::Finite(5 * m) {
            return Err(format!("m = {m}: sigma_5 = {}", sigma_k(&g, 5).value));
        }
        if m <= 2 {
            let min = min_leaf_spanning_tree(&g, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .min_leaves;
            if min != 5 {
                return Err(format!("m = {m}: oracle minimum {min}"));
            }
        }
        match solve_with(&g, SolveOptions { trace: true })
            .map_err(|e| e.to_string())?
            .solution
        {
            Solution::Refuted(c @ Certificate::LowSigmaWitness { degree_sum, .. })
                if degree_sum == 5 * m =>
            {
                c.verify(&g).map_err(|e| e.to_string())?;
            }
            other => return Err(format!("m = {m}: {other:?}")),
        }
    }
    Ok("m = 1..10 refuted with degree sum 5m = n - 2; oracle minimum 5 for m = 1, 2".into())
}

fn criterion_3(r: &Runs) -> Result<String, String> {
    let s = &r.random40;
    if s.graphs_scanned != 1000
        || s.solver_trees != 1000
        || s.solver_refutations != 0
        || !s.is_clean()
    {
        return Err(format!(
            "{} trees, {} refutations; {}",
            s.solver_trees,
            s.solver_refutations,
            describe(s)
        ));
    }
    if s.max_branch_vertices > 2 || s.max_tree_leaves > 4 {
        return Err(format!(
            "{} branch vertices, {} leaves",
            s.max_branch_vertices, s.max_tree_leaves
        ));
    }
    Ok(format!(
        "1000 instances on 40 vertices, 1000 trees, at most {} branch vertices",
        s.max_branch_vertices
    ))
}

fn criterion_4(r: &Runs) -> Result<String, String> {
    let kinds = [
        ViolationKind::OracleMismatch,
        ViolationKind::RefutedUnderHypotheses,
        ViolationKind::BadTree,
    ];
    let mut checked = 0;
    for s in r.exhaustive.iter().chain([&r.random12]) {
        if s.oracle_checked != s.connected || !kinds_clean(s, &kinds) {
            return Err(describe(s));
        }
        checked += s.oracle_checked;
    }
    if r.random12.oracle_checked != 100 {
        return Err(format!(
            "{} oracle runs at n = 12",
            r.random12.oracle_checked
        ));
    }
    Ok(format!(
        "{checked} graphs agree with exhaustive enumeration (n <= 7 and 100 at n = 12)"
    ))
}

fn criterion_5(r: &Runs) -> Result<String, String> {
    let kinds = [ViolationKind::PotentialDescent, ViolationKind::SolverError];
    let mut moves = 0;
    for s in r.exhaustive.iter().chain([&r.random40, &r.random12]) {
        if !kinds_clean(s, &kinds) || s.max_moves > iteration_limit(s.n) {
            return Err(describe(s));
        }
        moves += s.moves_total;
    }
    for m in 1..=10 {
        let g = sharpness_graph(m);
        let report = solve_with(&g, SolveOptions { trace: true }).map_err(|e| e.to_string())?;
        if report.trace.iter().any(|t| t.after >= t.before) || report.moves > iteration_limit(g.n())
        {
            return Err(format!("sharpness m = {m}"));
        }
        moves += report.moves;
    }
    Ok(format!(
        "{moves} accepted moves, each strictly lowering the potential"
    ))
}

fn criterion_6() -> Result<String, String> {
    let fixtures = common::fixtures();
    let failures: Vec<String> = fixtures
        .iter()
        .filter_map(|f| {
            common::check_fixture(f)
                .err()
                .map(|e| format!("{}: {e}", f.tag))
        })
        .collect();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    let covered = leafspan::leafmin::ClaimTag::ALL
        .iter()
        .filter(|&&t| t != leafspan::leafmin::ClaimTag::Grow)
        .all(|t| fixtures.iter().any(|f| f.tag == *t));
    if !covered {
        return Err("some catalog entry has no fixture".into());
    }
    Ok(format!(
        "{} catalog entries, each fired by its own fixture",
        fixtures.len()
    ))
}

fn criterion_7(r: &Runs) -> Result<String, String> {
    let kinds = [ViolationKind::SigmaMismatch, ViolationKind::BadCertificate];
    let mut compared = 0;
    for s in r.exhaustive.iter().chain([&r.sample8]) {
        if s.sigma_checked != s.graphs_scanned || !kinds_clean(s, &kinds) {
            return Err(describe(s));
        }
        compared += s.sigma_checked;
    }
    for s in [&r.random40, &r.random12] {
        if !kinds_clean(s, &kinds) {
            return Err(describe(s));
        }
    }
    Ok(format!(
        "sigma_5 matches the subset scan on {compared} graphs; every certificate verifies"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let exhaustive: Vec<SweepSummary> = (1..=7).map(exhaustive_sweep).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sample8 = SweepSummary {
        n: 8,
        ..Default::default()
    };
    for _ in 0..20_000 {
        let index = rng.random_range(0..1u64 << 28);
        check_instance(
            &labeled_graph(8, index),
            SweepChecks {
                oracle: true,
                sigma: true,
            },
            &mut sample8,
        );
    }
    let runs = Runs {
        exhaustive,
        random40: random_sweep(40, 1000, SEED),
        random12: random_sweep(12, 100, SEED),
        sample8,
    };

    let results = [
        (
            "theorem holds on every graph with 7 vertices",
            criterion_1(&runs),
        ),
        ("sharpness family", criterion_2()),
        (
            "random theorem instances on 40 vertices",
            criterion_3(&runs),
        ),
        ("oracle equivalence", criterion_4(&runs)),
        ("potential descent", criterion_5(&runs)),
        ("per-entry fixtures", criterion_6()),
        ("sigma and certificate oracles", criterion_7(&runs)),
    ];
    let mut failed = 0;
    for (i, (name, result)) in results.iter().enumerate() {
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

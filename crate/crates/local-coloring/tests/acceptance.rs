//! Acceptance gate: one test per shipped guarantee, each printing a
//! pass/fail line (run with `--nocapture` to see the lines and timings).
//!
//! The heavyweight end-to-end corpus is computed once and shared by the
//! criteria that read different aspects of it.

mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use local_coloring::verify::{
    self, c_graph_local_chromatic, check_constrained_reduction, check_full_reduction,
    enumerate_nae_instances, random_coloring, random_graph, random_nae, E2eAspect,
};
use local_coloring::{
    chromatic_number, complete_graph, cycle_graph, extend_gadget_coloring,
    extendable_port_patterns, is_local, nae_gadget, pattern_is_extendable, validate, ColoringMode,
    GammaSearchOptions, PortPattern, SolverConfig,
};

fn report(criterion: &str, pass: bool, start: Instant, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!(
        "acceptance {criterion}: {status} in {:.2?} - {detail}",
        start.elapsed()
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_01_local_chromatic_closed_form() {
    // floor(1.5 n - 0.5) - r for all 1 <= n <= 8, 0 <= r <= n/2.
    let start = Instant::now();
    let suite = verify::thrc_suite(8, None);
    let detail = format!(
        "{} (n, r) pairs, {} solver nodes",
        suite.lines.len(),
        suite.nodes
    );
    if !suite.passed() {
        print!("{}", suite.render());
    }
    report("criterion 01 (closed-form local chromatic numbers)", suite.passed(), start, &detail);
}

#[test]
fn criterion_02_port_pattern_tables() {
    // Solver-computed extendability tables match the closed-form predicate
    // for k in 3..=7, in both gadget families.
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 3..=7u32 {
        for mode in [ColoringMode::Local, ColoringMode::SemiMatching] {
            let table = extendable_port_patterns(k, mode).unwrap();
            assert_eq!(table.len(), 8);
            for (p, got) in table {
                if got != pattern_is_extendable(k, &p) {
                    failures.push(format!("k={k} {mode} ({},{},{})", p.u1, p.u2, p.v));
                }
            }
        }
    }
    report(
        "criterion 02 (port pattern tables)",
        failures.is_empty(),
        start,
        &format!("80 patterns checked; mismatches: {failures:?}"),
    );
}

#[test]
fn criterion_03_extension_colorings() {
    // Explicit local extensions exist exactly for the allowed patterns and
    // validate, for k in 3..=12 (covers both parity branches).
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 3..=12u32 {
        let gadget = nae_gadget(k, ColoringMode::Local).unwrap();
        for p in PortPattern::all(k) {
            let got = extend_gadget_coloring(k, ColoringMode::Local, &p).unwrap();
            if got.is_some() != pattern_is_extendable(k, &p) {
                failures.push(format!("k={k} ({},{},{}) presence", p.u1, p.u2, p.v));
                continue;
            }
            if let Some(w) = got {
                checked += 1;
                if !is_local(&gadget.graph, &w).unwrap() {
                    failures.push(format!("k={k} ({},{},{}) invalid", p.u1, p.u2, p.v));
                }
            }
        }
    }
    report(
        "criterion 03 (explicit extension colorings)",
        failures.is_empty(),
        start,
        &format!("{checked} extensions validated; failures: {failures:?}"),
    );
}

#[test]
fn criterion_04_core_apex_join() {
    // Joining an apex to the local core leaves local chromatic number
    // exactly k-1, agreeing with the closed form on the joined graph.
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 3..=7u32 {
        let core = local_coloring::l_graph(k).unwrap();
        let r = core.n() * core.n().saturating_sub(1) / 2 - core.edge_count();
        let joined = local_coloring::gadgets::core_apex_join(k).unwrap();
        let got = chromatic_number(&joined, ColoringMode::Local, k).unwrap();
        let formula = c_graph_local_chromatic(core.n() + 1, r);
        if got != Some(k - 1) || formula != k - 1 {
            failures.push(format!("k={k}: solver {got:?}, formula {formula}"));
        }
    }
    report(
        "criterion 04 (core apex join)",
        failures.is_empty(),
        start,
        &format!("k=3..7; failures: {failures:?}"),
    );
}

#[test]
fn criterion_05_gamma_certification() {
    // Witnesses for tau in 1..=3 certify, and the tripled witnesses keep all
    // three chromatic numbers under every removal of up to two vertices.
    let start = Instant::now();
    let suite = verify::gamma_suite(3, None);
    if !suite.passed() {
        print!("{}", suite.render());
    }
    // tau = 4 is best effort under an explicit budget; reported, not required.
    let opts = GammaSearchOptions {
        max_vertices: 12,
        max_candidates: 50,
        node_budget: 10_000_000,
        seed: 0,
    };
    let best_effort = verify::gamma_best_effort(4, &opts).unwrap();
    println!("  note: {} ({})", best_effort.label, best_effort.detail);
    report(
        "criterion 05 (equal-chromatic-number witnesses)",
        suite.passed(),
        start,
        &format!("{} checks", suite.lines.len()),
    );
}

#[test]
fn criterion_06_group_forcing_equivalence() {
    // On random constrained instances, solving directly agrees with solving
    // the composed plain graph, in both modes, k in {3, 4}.
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let instances: Vec<_> = (0..110).map(|_| verify::random_constrained(&mut rng, 6, 2)).collect();
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, inst)| {
            let mut bad = Vec::new();
            for mode in [ColoringMode::Local, ColoringMode::SemiMatching] {
                for k in [3u32, 4] {
                    let cfg = SolverConfig::new(mode, k).with_deterministic(false);
                    let direct = local_coloring::solve_constrained(inst, &cfg)
                        .unwrap()
                        .is_some();
                    let (graph, _) = local_coloring::equality_compose(inst, k, mode).unwrap();
                    let composed = local_coloring::find_coloring(&graph, &cfg, &BTreeMap::new())
                        .unwrap()
                        .is_some();
                    if direct != composed {
                        bad.push(format!("#{i} k={k} {mode}: direct={direct} composed={composed}"));
                    }
                }
            }
            bad
        })
        .collect();
    report(
        "criterion 06 (group forcing equivalence)",
        failures.is_empty(),
        start,
        &format!("{} instances x 4 configurations; failures: {failures:?}", instances.len()),
    );
}

struct CorpusOutcome {
    instances: usize,
    satisfiable_checks: usize,
    decision_failures: Vec<String>,
    lifting_failures: Vec<String>,
}

fn full_corpus() -> &'static CorpusOutcome {
    static OUTCOME: OnceLock<CorpusOutcome> = OnceLock::new();
    OUTCOME.get_or_init(|| {
        let mut instances = Vec::new();
        for vars in 1..=2 {
            instances.extend(enumerate_nae_instances(vars, 2));
        }
        let cases: Vec<_> = instances
            .iter()
            .flat_map(|inst| {
                [ColoringMode::Local, ColoringMode::SemiMatching]
                    .into_iter()
                    .flat_map(move |mode| [3u32, 4].map(move |k| (inst, k, mode)))
            })
            .collect();
        let results: Vec<Result<bool, (E2eAspect, String)>> = cases
            .par_iter()
            .map(|(inst, k, mode)| check_full_reduction(inst, *k, *mode, None))
            .collect();
        collect_outcome(instances.len(), &cases, results)
    })
}

fn random_corpus() -> &'static CorpusOutcome {
    static OUTCOME: OnceLock<CorpusOutcome> = OnceLock::new();
    OUTCOME.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        let instances: Vec<_> = (0..210)
            .map(|_| {
                let vars = rng.random_range(1..=4);
                let clauses = rng.random_range(0..=5);
                random_nae(&mut rng, vars, clauses)
            })
            .collect();
        let cases: Vec<_> = instances
            .iter()
            .flat_map(|inst| {
                [ColoringMode::Local, ColoringMode::SemiMatching]
                    .into_iter()
                    .flat_map(move |mode| [3u32, 4, 5].map(move |k| (inst, k, mode)))
            })
            .collect();
        let results: Vec<Result<bool, (E2eAspect, String)>> = cases
            .par_iter()
            .map(|(inst, k, mode)| check_constrained_reduction(inst, *k, *mode, None))
            .collect();
        collect_outcome(instances.len(), &cases, results)
    })
}

fn collect_outcome(
    instances: usize,
    cases: &[(&local_coloring::NaeInstance, u32, ColoringMode)],
    results: Vec<Result<bool, (E2eAspect, String)>>,
) -> CorpusOutcome {
    let mut outcome = CorpusOutcome {
        instances,
        satisfiable_checks: 0,
        decision_failures: Vec::new(),
        lifting_failures: Vec::new(),
    };
    for ((inst, k, mode), result) in cases.iter().zip(results) {
        match result {
            Ok(true) => outcome.satisfiable_checks += 1,
            Ok(false) => {}
            Err((aspect, msg)) => {
                let line = format!("k={k} {mode} [{}]: {msg}", inst.to_text().replace('\n', "; "));
                match aspect {
                    E2eAspect::Decision => outcome.decision_failures.push(line),
                    E2eAspect::Lifting => outcome.lifting_failures.push(line),
                }
            }
        }
    }
    outcome
}

#[test]
fn criterion_07_end_to_end_equivalence() {
    // (a) exhaustive instances with <= 2 variables and <= 2 clauses, k in
    // {3, 4}: satisfiable iff the fully reduced graph is colorable, both
    // modes. (b) random instances with <= 4 variables and <= 5 clauses, k in
    // {3, 4, 5}: satisfiable iff the constrained stage solves, and iff the
    // group-enumeration oracle agrees.
    let start = Instant::now();
    let full = full_corpus();
    let rand = random_corpus();
    let pass = full.decision_failures.is_empty() && rand.decision_failures.is_empty();
    report(
        "criterion 07 (end-to-end equivalence)",
        pass,
        start,
        &format!(
            "exhaustive: {} instances; random: {} instances; decision failures: {:?}",
            full.instances,
            rand.instances,
            [&full.decision_failures[..], &rand.decision_failures[..]].concat(),
        ),
    );
}

#[test]
fn criterion_08_lifting() {
    // Every satisfiable instance from criterion 7 lifts to a coloring that
    // validates, and every solver-found coloring extracts to a satisfying
    // assignment.
    let start = Instant::now();
    let full = full_corpus();
    let rand = random_corpus();
    let pass = full.lifting_failures.is_empty() && rand.lifting_failures.is_empty();
    report(
        "criterion 08 (lifting and extraction)",
        pass,
        start,
        &format!(
            "{} satisfiable checks; lifting failures: {:?}",
            full.satisfiable_checks + rand.satisfiable_checks,
            [&full.lifting_failures[..], &rand.lifting_failures[..]].concat(),
        ),
    );
}

#[test]
fn criterion_09_validator_oracle_equivalence() {
    // Optimized validators agree with the definition-literal enumerator on
    // random (graph, coloring, k) triples in all three modes.
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let triples: Vec<_> = (0..1050)
        .map(|_| {
            let n = rng.random_range(1..=12);
            let k = rng.random_range(1..=5);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let c = random_coloring(&mut rng, n, k);
            (g, c)
        })
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (g, c))| {
            let mut bad = Vec::new();
            for mode in ColoringMode::ALL {
                let fast = validate(g, c, mode).unwrap();
                let slow = common::naive_validate(g, c, mode);
                if fast != slow {
                    bad.push(format!("#{i} {mode}: fast={fast} naive={slow}"));
                }
            }
            bad
        })
        .collect();
    report(
        "criterion 09 (validator oracle equivalence)",
        failures.is_empty(),
        start,
        &format!("{} triples x 3 modes; failures: {failures:?}", triples.len()),
    );
}

#[test]
fn criterion_10_semi_matching_small_facts() {
    // Semi-matching chromatic number of a complete graph is its order (up to
    // n = 6), and of the 5-cycle is 3.
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=6usize {
        let got = chromatic_number(&complete_graph(n), ColoringMode::SemiMatching, n as u32 + 1)
            .unwrap();
        if got != Some(n as u32) {
            failures.push(format!("complete graph n={n}: {got:?}"));
        }
    }
    let got = chromatic_number(&cycle_graph(5), ColoringMode::SemiMatching, 5).unwrap();
    if got != Some(3) {
        failures.push(format!("5-cycle: {got:?}"));
    }
    report(
        "criterion 10 (semi-matching small facts)",
        failures.is_empty(),
        start,
        &format!("failures: {failures:?}"),
    );
}

#[test]
fn gamma_witness_reused_by_compose_matches_spec_sizes() {
    // Cheap structural cross-checks tied to the acceptance corpus: the
    // composed graph sizes follow the closed-form vertex count.
    let start = Instant::now();
    let inst = local_coloring::parse_nae("p nae3 1 1\n1 1 1\n").unwrap();
    let mut failures = Vec::new();
    for (k, mode, want) in [
        (3u32, ColoringMode::Local, 13usize),
        (4, ColoringMode::Local, 21),
        (3, ColoringMode::SemiMatching, 13),
    ] {
        let (graph, _) = local_coloring::reduce_full(&inst, k, mode).unwrap();
        if graph.n() != want
            || graph.n() != verify::expected_full_vertices(&inst, k, mode).unwrap()
        {
            failures.push(format!("k={k} {mode}: {} vertices", graph.n()));
        }
    }
    report(
        "structural vertex counts",
        failures.is_empty(),
        start,
        &format!("failures: {failures:?}"),
    );
}

//! One binary with subcommands for reducing NAE 3-SAT instances to coloring
//! instances, solving and checking colorings, running the verification
//! suites, and searching for equal-chromatic-number witnesses.
//!
//! Exit codes: 0 question answered, 2 usage error, 3 input parse error,
//! 4 node budget exhausted, 5 verification failure (a failed suite check or
//! an invalid coloring).

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use local_coloring::verify::{self, E2eOptions};
use local_coloring::{
    explain, solve_constrained_with_stats, ColoringMode, ConstrainedInstance, GadgetError,
    GammaSearchOptions, Graph, KColoring, SolverConfig, SolverError,
};
use report::{fnv1a64, Report};

const EXIT_PARSE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Budget(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Parse(_) => ExitCode::from(EXIT_PARSE),
            Failure::Budget(_) => ExitCode::from(EXIT_BUDGET),
            Failure::Io(_) => ExitCode::from(1),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Budget(m) | Failure::Io(m) => m,
        }
    }
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
        SolverError::InvalidK
        | SolverError::InvalidBudget
        | SolverError::GroupsNeedThreeColors { .. } => Failure::Usage(e.to_string()),
        other => Failure::Parse(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Proper,
    Local,
    SemiMatching,
}

impl From<ModeArg> for ColoringMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Proper => ColoringMode::Proper,
            ModeArg::Local => ColoringMode::Local,
            ModeArg::SemiMatching => ColoringMode::SemiMatching,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StageArg {
    Constrained,
    Full,
}

/// Inclusive `lo..hi` range of k values; a bare number means a single k.
#[derive(Debug, Clone, Copy)]
struct KRange {
    lo: u32,
    hi: u32,
}

fn parse_k_range(s: &str) -> Result<KRange, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range start `{lo}`"))?;
        let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range end `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(KRange { lo, hi })
    } else {
        let k: u32 = s.trim().parse().map_err(|_| format!("bad k `{s}`"))?;
        Ok(KRange { lo: k, hi: k })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "local-coloring",
    version,
    about = "Exact local and semi-matching coloring toolkit: reductions, solving, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a NAE 3-SAT instance to a coloring instance.
    Reduce(ReduceArgs),
    /// Decide k-colorability of a graph, with optional group constraints.
    Solve(SolveArgs),
    /// Check a coloring file against a graph and report the first violation.
    Check(CheckArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Find (or load) a certified equal-chromatic-number witness.
    GammaSearch(GammaSearchArgs),
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// NAE 3-SAT instance file (`p nae3` format).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// `constrained` stops after the group-constrained stage; `full` also
    /// adjoins the witness copies.
    #[arg(long, value_enum, default_value = "full")]
    stage: StageArg,
    /// Output path prefix; writes `<out>.graph`, `<out>.trace`, and for the
    /// constrained stage `<out>.groups`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Graph file (`p edge` format).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Optional group constraints file (`u <v...>` lines, 1-based).
    #[arg(long)]
    constraints: Option<PathBuf>,
    /// Node budget for the search.
    #[arg(long)]
    budget: Option<u64>,
    /// Return the lexicographically smallest witness (slower on large
    /// instances than the default search order).
    #[arg(long)]
    lex_witness: bool,
    /// Write the witness coloring here when satisfiable.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Coloring file (`s <k>` / `v <vertex> <color>` format).
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: VerifySuite,
}

#[derive(Subcommand, Debug)]
enum VerifySuite {
    /// Closed-form local chromatic numbers of complete graphs minus a
    /// matching, against the exact solver.
    Thrc {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Clause-gadget pattern tables, explicit extensions, the apex-join
    /// fact, and group-forcing equivalence on random instances.
    Gadgets {
        /// k range for tables and the apex fact, e.g. `3..7`.
        #[arg(long, value_parser = parse_k_range, default_value = "3..7")]
        k: KRange,
        /// Upper k for the explicit extension colorings.
        #[arg(long, default_value_t = 12)]
        construct_k_max: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// End-to-end reduction equivalence: exhaustive tiny instances and an
    /// optional random corpus.
    E2e {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        clauses: usize,
        #[arg(long, value_parser = parse_k_range, default_value = "3..4")]
        k: KRange,
        /// Random instances per configuration (0 = exhaustive only).
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Witness certification and removal robustness of the tripled witness.
    Gamma {
        #[arg(long, default_value_t = 3)]
        tau_max: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct GammaSearchArgs {
    #[arg(long)]
    tau: u32,
    /// Per-solver-call node budget during candidate certification.
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
    /// Total candidates examined before giving up.
    #[arg(long, default_value_t = 2_000)]
    candidates: u64,
    #[arg(long, default_value_t = 14)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cache directory: hits are re-certified, finds are stored.
    #[arg(long)]
    cache: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, contents)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn reduce_failure(e: local_coloring::ReduceError) -> Failure {
    use local_coloring::ReduceError;
    match e {
        ReduceError::KTooSmall(_) | ReduceError::ProperModeUnsupported => {
            Failure::Usage(e.to_string())
        }
        ReduceError::Gadget(GadgetError::SearchExhausted { .. }) => Failure::Budget(e.to_string()),
        ReduceError::Solver(inner) => solver_failure(inner),
        other => Failure::Parse(other.to_string()),
    }
}

fn digest_entry(report: &mut Report, name: &str, path: &Path, contents: &str) {
    report.push(format!("input.{name}"), path.display());
    report.push(format!("input.{name}.fnv1a64"), format!("{:016x}", fnv1a64(contents.as_bytes())));
}

fn render_groups(groups: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for group in groups {
        out.push('u');
        for v in group {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    out
}

fn parse_groups(text: &str, n: usize) -> Result<Vec<Vec<usize>>, Failure> {
    let mut groups = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let Some(rest) = line.strip_prefix("u ") else {
            return Err(Failure::Parse(format!(
                "constraints line {}: expected `u <v...>`",
                i + 1
            )));
        };
        let mut group = Vec::new();
        for token in rest.split_whitespace() {
            let v: usize = token.parse().map_err(|_| {
                Failure::Parse(format!("constraints line {}: bad vertex `{token}`", i + 1))
            })?;
            if v == 0 || v > n {
                return Err(Failure::Parse(format!(
                    "constraints line {}: vertex {v} out of range 1..={n}",
                    i + 1
                )));
            }
            group.push(v - 1);
        }
        if group.is_empty() {
            return Err(Failure::Parse(format!("constraints line {}: empty group", i + 1)));
        }
        groups.push(group);
    }
    Ok(groups)
}

fn cmd_reduce(args: &ReduceArgs) -> Result<(Report, ExitCode), Failure> {
    if args.k < 3 {
        return Err(Failure::Usage(format!("--k must be at least 3 (got {})", args.k)));
    }
    let mode: ColoringMode = args.mode.into();
    if mode == ColoringMode::Proper {
        return Err(Failure::Usage("reduce targets local or semi-matching mode".into()));
    }
    let text = read_file(&args.input)?;
    let inst = local_coloring::parse_nae(&text).map_err(|e| Failure::Parse(e.to_string()))?;

    let mut report = Report::new("reduce");
    digest_entry(&mut report, "instance", &args.input, &text);
    report.push("k", args.k);
    report.push("mode", mode);
    report.push("num-vars", inst.num_vars());
    report.push("num-clauses", inst.clauses().len());

    let start = Instant::now();
    let graph_path = args.out.with_extension("graph");
    let trace_path = args.out.with_extension("trace");
    match args.stage {
        StageArg::Constrained => {
            let (constrained, trace) = local_coloring::reduce_to_constrained(&inst, args.k, mode)
                .map_err(reduce_failure)?;
            let groups_path = args.out.with_extension("groups");
            write_file(&graph_path, &constrained.graph().to_dimacs())?;
            write_file(&groups_path, &render_groups(constrained.groups()))?;
            write_file(&trace_path, &trace.to_text())?;
            report.push("stage", "constrained");
            report.push("graph.vertices", constrained.graph().n());
            report.push("graph.edges", constrained.graph().edge_count());
            report.push("groups", constrained.groups().len());
            report.push("out.graph", graph_path.display());
            report.push("out.groups", groups_path.display());
            report.push("out.trace", trace_path.display());
        }
        StageArg::Full => {
            let (graph, trace) = local_coloring::reduce_full(&inst, args.k, mode)
                .map_err(reduce_failure)?;
            write_file(&graph_path, &graph.to_dimacs())?;
            write_file(&trace_path, &trace.to_text())?;
            report.push("stage", "full");
            report.push("graph.vertices", graph.n());
            report.push("graph.edges", graph.edge_count());
            report.push("out.graph", graph_path.display());
            report.push("out.trace", trace_path.display());
        }
    }
    report.push("time-ms", start.elapsed().as_millis());
    Ok((report, ExitCode::SUCCESS))
}

fn cmd_solve(args: &SolveArgs) -> Result<(Report, ExitCode), Failure> {
    let mode: ColoringMode = args.mode.into();
    let text = read_file(&args.graph)?;
    let graph = Graph::from_dimacs(&text).map_err(|e| Failure::Parse(e.to_string()))?;

    let mut report = Report::new("solve");
    digest_entry(&mut report, "graph", &args.graph, &text);
    report.push("k", args.k);
    report.push("mode", mode);

    let cfg = SolverConfig::new(mode, args.k)
        .with_budget(args.budget.or(Some(local_coloring::DEFAULT_NODE_BUDGET)))
        .with_deterministic(args.lex_witness);
    report.push("budget", cfg.node_budget.map_or("none".to_string(), |b| b.to_string()));
    report.push("deterministic", args.lex_witness);

    let start = Instant::now();
    let outcome = if let Some(constraints_path) = &args.constraints {
        let ctext = read_file(constraints_path)?;
        digest_entry(&mut report, "constraints", constraints_path, &ctext);
        let groups = parse_groups(&ctext, graph.n())?;
        report.push("groups", groups.len());
        let inst = ConstrainedInstance::new(graph.clone(), groups)
            .map_err(|e| Failure::Parse(e.to_string()))?;
        solve_constrained_with_stats(&inst, &cfg)
    } else {
        local_coloring::find_coloring_with_stats(&graph, &cfg, &std::collections::BTreeMap::new())
    };

    match outcome {
        Ok((witness, stats)) => {
            report.push("result", if witness.is_some() { "sat" } else { "unsat" });
            report.push("nodes", stats.nodes);
            report.push("time-ms", start.elapsed().as_millis());
            if let Some(w) = witness {
                let rendered: Vec<String> = w.colors().iter().map(u32::to_string).collect();
                report.push("witness.k", w.k());
                report.push("witness.colors", rendered.join(" "));
                if let Some(out) = &args.out {
                    write_file(out, &w.to_text())?;
                    report.push("out.coloring", out.display());
                }
            }
            Ok((report, ExitCode::SUCCESS))
        }
        Err(e) => Err(solver_failure(e)),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<(Report, ExitCode), Failure> {
    let mode: ColoringMode = args.mode.into();
    let gtext = read_file(&args.graph)?;
    let graph = Graph::from_dimacs(&gtext).map_err(|e| Failure::Parse(e.to_string()))?;
    let ctext = read_file(&args.coloring)?;
    let coloring = KColoring::from_text(&ctext).map_err(|e| Failure::Parse(e.to_string()))?;

    let mut report = Report::new("check");
    digest_entry(&mut report, "graph", &args.graph, &gtext);
    digest_entry(&mut report, "coloring", &args.coloring, &ctext);
    report.push("mode", mode);
    report.push("k", coloring.k());

    match explain(&graph, &coloring, mode) {
        Ok(None) => {
            report.push("result", "valid");
            Ok((report, ExitCode::SUCCESS))
        }
        Ok(Some(violation)) => {
            report.push("result", "invalid");
            report.push("violation", violation);
            Ok((report, ExitCode::from(EXIT_VERIFY)))
        }
        Err(e) => Err(Failure::Parse(e.to_string())),
    }
}

fn suite_report(report: &mut Report, suite: &verify::SuiteReport) -> ExitCode {
    report.push("suite", suite.suite);
    if let Some(seed) = suite.seed {
        report.push("seed", seed);
    }
    for (i, line) in suite.lines.iter().enumerate() {
        let status = if line.pass { "ok" } else { "FAIL" };
        report.push(
            format!("check.{i}"),
            format!("{status} {} ({})", line.label, line.detail),
        );
    }
    report.push("checks", suite.lines.len());
    report.push(
        "failures",
        suite.lines.iter().filter(|l| !l.pass).count(),
    );
    report.push("time-ms", suite.elapsed.as_millis());
    if suite.nodes > 0 {
        report.push("nodes", suite.nodes);
    }
    if suite.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(Report, ExitCode), Failure> {
    let mut report = Report::new("verify");
    let suite = match &args.suite {
        VerifySuite::Thrc { n_max, budget } => verify::thrc_suite(*n_max, *budget),
        VerifySuite::Gadgets { k, construct_k_max, samples, seed, budget } => {
            if k.lo < 3 {
                return Err(Failure::Usage("gadget suite needs k >= 3".into()));
            }
            verify::gadget_suite(k.lo, k.hi, *construct_k_max, *samples, *seed, *budget)
        }
        VerifySuite::E2e { vars, clauses, k, random, seed, budget } => {
            if k.lo < 3 {
                return Err(Failure::Usage("end-to-end suite needs k >= 3".into()));
            }
            let opts = E2eOptions {
                max_vars: *vars,
                max_clauses: *clauses,
                k_lo: k.lo,
                k_hi: k.hi,
                random: *random,
                exhaustive: *random == 0,
                seed: *seed,
                node_budget: *budget,
            };
            verify::e2e_suite(&opts)
        }
        VerifySuite::Gamma { tau_max, budget } => verify::gamma_suite(*tau_max, *budget),
    };
    let code = suite_report(&mut report, &suite);
    Ok((report, code))
}

fn cmd_gamma_search(args: &GammaSearchArgs) -> Result<(Report, ExitCode), Failure> {
    let mut report = Report::new("gamma-search");
    report.push("tau", args.tau);
    report.push("seed", args.seed);
    report.push("budget", args.budget);
    let opts = GammaSearchOptions {
        max_vertices: args.max_vertices,
        max_candidates: args.candidates,
        node_budget: args.budget,
        seed: args.seed,
    };
    let start = Instant::now();
    let outcome = match &args.cache {
        Some(dir) => local_coloring::load_or_search_gamma(dir, args.tau, &opts),
        None => local_coloring::gamma_search(args.tau, &opts),
    };
    match outcome {
        Ok(witness) => {
            report.push("result", "found");
            report.push("graph.vertices", witness.graph.n());
            report.push("graph.edges", witness.graph.edge_count());
            report.push("time-ms", start.elapsed().as_millis());
            if let Some(dir) = &args.cache {
                report.push("cache", dir.display());
            }
            Ok((report, ExitCode::SUCCESS))
        }
        Err(GadgetError::SearchExhausted { tau, candidates }) => {
            report.push("result", "not-found");
            report.push("candidates", candidates);
            report.push("time-ms", start.elapsed().as_millis());
            print!("{}", report.render());
            Err(Failure::Budget(format!(
                "no witness for tau {tau} within {candidates} candidates"
            )))
        }
        Err(GadgetError::InvalidTau) => Err(Failure::Usage("tau must be at least 1".into())),
        Err(e) => Err(Failure::Io(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<(Report, ExitCode), Failure> {
    match &cli.command {
        Command::Reduce(args) => cmd_reduce(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Check(args) => cmd_check(args),
        Command::Verify(args) => cmd_verify(args),
        Command::GammaSearch(args) => cmd_gamma_search(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            print!("{}", report.render());
            code
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}

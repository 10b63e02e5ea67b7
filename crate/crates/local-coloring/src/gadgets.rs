//! Gadget graphs for the coloring reductions: the clause-gadget cores, the
//! ported clause gadget with its extendability table and explicit extension
//! colorings, and certified "equality" witnesses whose proper, local, and
//! semi-matching chromatic numbers coincide.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::coloring::{validate, ColoringError, ColoringMode, KColoring};
use crate::graph::{
    c_graph, complete_graph, cycle_graph, disjoint_union, Graph, GraphBuilder, GraphError,
    GraphParseError,
};
use crate::solver::{
    find_coloring, find_coloring_with_stats, ConstrainedInstance, SolverConfig, SolverError,
};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("gadget parameter k must be at least 3 (got {0})")]
    KTooSmall(u32),
    #[error("witness parameter tau must be at least 1")]
    InvalidTau,
    #[error("the proper mode has no clause gadget; use local or semi-matching")]
    ProperModeUnsupported,
    #[error("port colors must be 1 or {k} (got {color})")]
    BadPortColor { k: u32, color: u32 },
    #[error("no witness found for tau {tau} within budget ({candidates} candidates tried)")]
    SearchExhausted { tau: u32, candidates: u64 },
    #[error("witness failed certification: {0}")]
    BadWitness(String),
    #[error("witness cache file {path}: {msg}")]
    Cache { path: PathBuf, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    GraphParse(#[from] GraphParseError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Core graph of the clause gadget: a single vertex for `k = 3`, the complete
/// graph on `2t` vertices minus a perfect matching for `k = 2t + 2`, and
/// minus a near-perfect matching for `k = 2t + 3`.
pub fn l_graph(k: u32) -> Result<Graph, GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall(k));
    }
    let g = if k == 3 {
        c_graph(1, 0).expect("valid")
    } else if k.is_multiple_of(2) {
        let t = (k as usize - 2) / 2;
        c_graph(2 * t, t).expect("valid")
    } else {
        let t = (k as usize - 3) / 2;
        c_graph(2 * t, t - 1).expect("valid")
    };
    Ok(g)
}

/// The clause gadget: two disjoint cores plus three new vertices, with `u1`
/// joined to the first core, `u2` to the second, and `v` to both. In local
/// mode the cores are [`l_graph`]; in semi-matching mode they are complete
/// graphs on `k - 2` vertices.
#[derive(Debug, Clone)]
pub struct PortedGadget {
    pub graph: Graph,
    pub u1: usize,
    pub u2: usize,
    pub v: usize,
    pub core1: Range<usize>,
    pub core2: Range<usize>,
}

/// Builds the clause gadget for `k` and `mode`. Vertices are laid out as
/// core 1, core 2, `u1`, `u2`, `v`, in that order.
pub fn nae_gadget(k: u32, mode: ColoringMode) -> Result<PortedGadget, GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall(k));
    }
    let core = match mode {
        ColoringMode::Local => l_graph(k)?,
        ColoringMode::SemiMatching => complete_graph(k as usize - 2),
        ColoringMode::Proper => return Err(GadgetError::ProperModeUnsupported),
    };
    let cn = core.n();
    let mut b = GraphBuilder::new(0);
    let c1 = b.append(&core);
    let c2 = b.append(&core);
    let u1 = b.add_vertex();
    let u2 = b.add_vertex();
    let v = b.add_vertex();
    b.set_label(u1, "u1".to_string());
    b.set_label(u2, "u2".to_string());
    b.set_label(v, "v".to_string());
    for i in 0..cn {
        b.add_edge(u1, c1 + i).expect("in range");
        b.add_edge(u2, c2 + i).expect("in range");
        b.add_edge(v, c1 + i).expect("in range");
        b.add_edge(v, c2 + i).expect("in range");
    }
    Ok(PortedGadget {
        graph: b.build(),
        u1,
        u2,
        v,
        core1: c1..c1 + cn,
        core2: c2..c2 + cn,
    })
}

/// An assignment of colors from `{1, k}` to the three gadget ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortPattern {
    pub u1: u32,
    pub u2: u32,
    pub v: u32,
}

impl PortPattern {
    pub fn new(k: u32, u1: u32, u2: u32, v: u32) -> Result<Self, GadgetError> {
        for color in [u1, u2, v] {
            if color != 1 && color != k {
                return Err(GadgetError::BadPortColor { k, color });
            }
        }
        Ok(Self { u1, u2, v })
    }

    /// The eight patterns in lexicographic order (1 before k).
    pub fn all(k: u32) -> Vec<PortPattern> {
        let mut out = Vec::with_capacity(8);
        for &u1 in &[1, k] {
            for &u2 in &[1, k] {
                for &v in &[1, k] {
                    out.push(PortPattern { u1, u2, v });
                }
            }
        }
        out
    }
}

/// Closed-form extendability predicate: a port pattern extends to a valid
/// gadget coloring unless `u1`, `u2`, and `k + 1 - v` are all equal, i.e.
/// exactly the patterns `(1,1,k)` and `(k,k,1)` are blocked.
pub fn pattern_is_extendable(k: u32, p: &PortPattern) -> bool {
    !(p.u1 == p.u2 && p.u1 == k + 1 - p.v)
}

/// Ground-truth extendability table computed by the solver: for each of the
/// eight `{1,k}` port patterns, whether some valid gadget coloring agrees
/// with it on the ports.
pub fn extendable_port_patterns(
    k: u32,
    mode: ColoringMode,
) -> Result<Vec<(PortPattern, bool)>, GadgetError> {
    let gadget = nae_gadget(k, mode)?;
    let cfg = SolverConfig::new(mode, k).with_deterministic(false);
    let mut table = Vec::with_capacity(8);
    for p in PortPattern::all(k) {
        let fixed = BTreeMap::from([(gadget.u1, p.u1), (gadget.u2, p.u2), (gadget.v, p.v)]);
        let extendable = find_coloring(&gadget.graph, &cfg, &fixed)?.is_some();
        table.push((p, extendable));
    }
    Ok(table)
}

/// Colors for a gadget core that sits next to apexes colored `k` only:
/// endpoints of each removed pair share an odd color, the unmatched vertices
/// (odd `k`) take the two largest values. Everything stays within `1..=k-2`.
fn low_core_colors(k: u32) -> Vec<u32> {
    if k == 3 {
        return vec![1];
    }
    let t = if k.is_multiple_of(2) { (k - 2) / 2 } else { (k - 3) / 2 };
    let pairs = if k.is_multiple_of(2) { t } else { t - 1 };
    let mut out = Vec::with_capacity(2 * t as usize);
    for i in 1..=pairs {
        out.push(2 * i - 1);
        out.push(2 * i - 1);
    }
    if !k.is_multiple_of(2) {
        out.push(2 * t - 1);
        out.push(2 * t);
    }
    out
}

/// Colors for a gadget core whose `u`-side apex is colored 1 and whose shared
/// apex is colored `k`: removed pairs take consecutive colors `(2,3), (4,5),
/// ...` for even `k`; for odd `k` pairs repeat the even colors `4, 6, ...`
/// and the unmatched vertices take 2 and `k - 1`.
fn mixed_core_colors(k: u32) -> Vec<u32> {
    if k == 3 {
        return vec![2];
    }
    let t = if k.is_multiple_of(2) { (k - 2) / 2 } else { (k - 3) / 2 };
    let mut out = Vec::with_capacity(2 * t as usize);
    if k.is_multiple_of(2) {
        for i in 1..=t {
            out.push(2 * i);
            out.push(2 * i + 1);
        }
    } else {
        for i in 1..t {
            out.push(2 * i + 2);
            out.push(2 * i + 2);
        }
        out.push(2);
        out.push(2 * t + 2);
    }
    out
}

fn reversed_colors(colors: &[u32], k: u32) -> Vec<u32> {
    colors.iter().map(|c| k + 1 - c).collect()
}

/// Produces a full gadget coloring agreeing with `pattern` on the ports, or
/// `None` exactly on the blocked patterns. Local mode uses explicit
/// constructions (mirrored through the color reversal `c -> k + 1 - c` and
/// the core swap); semi-matching mode delegates to the solver.
pub fn extend_gadget_coloring(
    k: u32,
    mode: ColoringMode,
    pattern: &PortPattern,
) -> Result<Option<KColoring>, GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall(k));
    }
    for color in [pattern.u1, pattern.u2, pattern.v] {
        if color != 1 && color != k {
            return Err(GadgetError::BadPortColor { k, color });
        }
    }
    if !pattern_is_extendable(k, pattern) {
        return Ok(None);
    }
    let gadget = nae_gadget(k, mode)?;
    match mode {
        ColoringMode::Proper => unreachable!("nae_gadget rejects proper mode"),
        ColoringMode::SemiMatching => {
            let cfg = SolverConfig::new(mode, k);
            let fixed = BTreeMap::from([
                (gadget.u1, pattern.u1),
                (gadget.u2, pattern.u2),
                (gadget.v, pattern.v),
            ]);
            Ok(find_coloring(&gadget.graph, &cfg, &fixed)?)
        }
        ColoringMode::Local => {
            let low = low_core_colors(k);
            let mixed = mixed_core_colors(k);
            let high = reversed_colors(&low, k);
            let rev_mixed = reversed_colors(&mixed, k);
            let hi = |c: u32| c == k;
            let (c1, c2) = match (hi(pattern.u1), hi(pattern.u2), hi(pattern.v)) {
                (true, true, true) => (low.clone(), low.clone()),
                (false, false, false) => (high.clone(), high.clone()),
                (true, false, true) => (low.clone(), mixed.clone()),
                (false, true, false) => (high.clone(), rev_mixed.clone()),
                (false, true, true) => (mixed.clone(), low.clone()),
                (true, false, false) => (rev_mixed.clone(), high.clone()),
                _ => unreachable!("blocked patterns already returned None"),
            };
            let mut colors = vec![0u32; gadget.graph.n()];
            colors[gadget.core1.clone()].copy_from_slice(&c1);
            colors[gadget.core2.clone()].copy_from_slice(&c2);
            colors[gadget.u1] = pattern.u1;
            colors[gadget.u2] = pattern.u2;
            colors[gadget.v] = pattern.v;
            let coloring = KColoring::new(k, colors)?;
            debug_assert_eq!(validate(&gadget.graph, &coloring, mode), Ok(true));
            Ok(Some(coloring))
        }
    }
}

/// Proof-of-work record for the lower bound: nodes the solver spent
/// refuting `tau - 1` colors in each mode (proper, local, semi-matching).
/// All zeros when `tau` is 1 and the bound is vacuous.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GammaCertificate {
    pub refutation_nodes: [u64; 3],
}

/// A graph certified to have proper, local, and semi-matching chromatic
/// numbers all equal to `tau`, together with one witness coloring per mode
/// and the record of the `tau - 1` refutations.
#[derive(Debug, Clone)]
pub struct GammaWitness {
    pub tau: u32,
    pub graph: Graph,
    pub proper: KColoring,
    pub local: KColoring,
    pub semi_matching: KColoring,
    pub certificate: GammaCertificate,
}

impl GammaWitness {
    pub fn witness(&self, mode: ColoringMode) -> &KColoring {
        match mode {
            ColoringMode::Proper => &self.proper,
            ColoringMode::Local => &self.local,
            ColoringMode::SemiMatching => &self.semi_matching,
        }
    }

    /// Re-derives the certificate with the solver: every stored witness is a
    /// valid `tau`-coloring in its mode, and `tau - 1` colors fail in every
    /// mode. Nothing loaded from a cache is trusted without this.
    pub fn certify(&self, node_budget: Option<u64>) -> Result<GammaCertificate, GadgetError> {
        if self.tau == 0 {
            return Err(GadgetError::InvalidTau);
        }
        let mut certificate = GammaCertificate::default();
        for (slot, mode) in ColoringMode::ALL.into_iter().enumerate() {
            let w = self.witness(mode);
            if w.k() != self.tau {
                return Err(GadgetError::BadWitness(format!(
                    "{mode} witness uses k={} but tau={}",
                    w.k(),
                    self.tau
                )));
            }
            if !validate(&self.graph, w, mode)? {
                return Err(GadgetError::BadWitness(format!("{mode} witness is invalid")));
            }
            if self.tau > 1 {
                let cfg = SolverConfig::new(mode, self.tau - 1)
                    .with_budget(node_budget)
                    .with_deterministic(false);
                let (found, stats) =
                    find_coloring_with_stats(&self.graph, &cfg, &BTreeMap::new())?;
                if found.is_some() {
                    return Err(GadgetError::BadWitness(format!(
                        "graph admits a {mode} coloring with {} colors",
                        self.tau - 1
                    )));
                }
                certificate.refutation_nodes[slot] = stats.nodes;
            }
        }
        Ok(certificate)
    }
}

fn witness_from_graph(
    graph: Graph,
    tau: u32,
    node_budget: Option<u64>,
) -> Result<Option<GammaWitness>, GadgetError> {
    let mut found: Vec<KColoring> = Vec::with_capacity(3);
    for mode in [
        ColoringMode::SemiMatching,
        ColoringMode::Local,
        ColoringMode::Proper,
    ] {
        let cfg = SolverConfig::new(mode, tau).with_budget(node_budget);
        match find_coloring(&graph, &cfg, &BTreeMap::new()) {
            Ok(Some(w)) => found.push(w),
            Ok(None) => return Ok(None),
            Err(SolverError::BudgetExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        }
    }
    let mut certificate = GammaCertificate::default();
    if tau > 1 {
        for (slot, mode) in ColoringMode::ALL.into_iter().enumerate() {
            let cfg = SolverConfig::new(mode, tau - 1)
                .with_budget(node_budget)
                .with_deterministic(false);
            match find_coloring_with_stats(&graph, &cfg, &BTreeMap::new()) {
                Ok((None, stats)) => certificate.refutation_nodes[slot] = stats.nodes,
                Ok((Some(_), _)) => return Ok(None),
                Err(SolverError::BudgetExhausted { .. }) => return Ok(None),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let (semi_matching, local, proper) = {
        let mut it = found.into_iter();
        (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
    };
    Ok(Some(GammaWitness {
        tau,
        graph,
        proper,
        local,
        semi_matching,
        certificate,
    }))
}

/// Search knobs for witness discovery beyond the built-in table.
#[derive(Debug, Clone)]
pub struct GammaSearchOptions {
    /// Largest candidate graph considered.
    pub max_vertices: usize,
    /// Total candidates examined before giving up.
    pub max_candidates: u64,
    /// Per-solver-call node budget while certifying a candidate; exhaustion
    /// skips the candidate, it never admits an uncertified witness.
    pub node_budget: u64,
    pub seed: u64,
}

impl Default for GammaSearchOptions {
    fn default() -> Self {
        Self {
            max_vertices: 14,
            max_candidates: 2_000,
            node_budget: 2_000_000,
            seed: 0,
        }
    }
}

/// Grows a graph by one mirror vertex per original plus an apex joined to
/// all mirrors; raises the proper chromatic number by exactly one, which
/// makes iterating it from small witnesses a good candidate generator.
fn mycielski(g: &Graph) -> Graph {
    let n = g.n();
    let mut b = GraphBuilder::new(2 * n + 1);
    for (u, v) in g.edges() {
        b.add_edge(u, v).expect("in range");
        b.add_edge(n + u, v).expect("in range");
        b.add_edge(u, n + v).expect("in range");
    }
    for i in 0..n {
        b.add_edge(n + i, 2 * n).expect("in range");
    }
    b.build()
}

fn builtin_gamma_graph(tau: u32) -> Option<Graph> {
    match tau {
        1 => Some(complete_graph(1)),
        2 => Some(complete_graph(2)),
        3 => Some(cycle_graph(5)),
        _ => None,
    }
}

/// A certified equal-chromatic-numbers witness for `tau`: built-in graphs
/// (a vertex, an edge, the 5-cycle) for `tau <= 3`, bounded search beyond.
/// Every returned witness has been certified by the solver.
pub fn gamma_graph(tau: u32) -> Result<GammaWitness, GadgetError> {
    if tau == 0 {
        return Err(GadgetError::InvalidTau);
    }
    if let Some(graph) = builtin_gamma_graph(tau) {
        let witness = witness_from_graph(graph, tau, None)?
            .expect("built-in witnesses certify");
        return Ok(witness);
    }
    gamma_search(tau, &GammaSearchOptions::default())
}

/// Bounded candidate search for an equal-chromatic-numbers witness:
/// iterated mirror growth from the 5-cycle, exhaustive enumeration of tiny
/// graphs, then seeded random graphs of increasing size. Exhausting the
/// budget is an explicit error; a wrong witness is never returned.
pub fn gamma_search(tau: u32, opts: &GammaSearchOptions) -> Result<GammaWitness, GadgetError> {
    use rand::Rng as _;
    use rand::SeedableRng as _;

    if tau == 0 {
        return Err(GadgetError::InvalidTau);
    }
    if let Some(graph) = builtin_gamma_graph(tau) {
        return Ok(witness_from_graph(graph, tau, None)?.expect("built-in witnesses certify"));
    }

    let budget = Some(opts.node_budget);
    let mut tried = 0u64;
    let consider = |graph: Graph, tried: &mut u64| -> Result<Option<GammaWitness>, GadgetError> {
        if graph.n() > opts.max_vertices {
            return Ok(None);
        }
        *tried += 1;
        witness_from_graph(graph, tau, budget)
    };

    // Mirror-growth ladder from the 5-cycle (tau 3), one rung per level.
    let mut ladder = cycle_graph(5);
    for _ in 3..tau {
        ladder = mycielski(&ladder);
    }
    if tried < opts.max_candidates {
        if let Some(w) = consider(ladder, &mut tried)? {
            return Ok(w);
        }
    }

    // Exhaustive enumeration of graphs on up to 6 vertices.
    for n in (tau as usize).max(2)..=6.min(opts.max_vertices) {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            if tried >= opts.max_candidates {
                return Err(GadgetError::SearchExhausted { tau, candidates: tried });
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            // Too few edges cannot reach chromatic number tau.
            if edges.len() < (tau as usize) * (tau as usize - 1) / 2 {
                continue;
            }
            let graph = Graph::from_edges(n, &edges).expect("valid");
            if let Some(w) = consider(graph, &mut tried)? {
                return Ok(w);
            }
        }
    }

    // Seeded random graphs of increasing size.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 7..=opts.max_vertices {
        for _ in 0..200 {
            if tried >= opts.max_candidates {
                return Err(GadgetError::SearchExhausted { tau, candidates: tried });
            }
            let p = rng.random_range(0.2..0.8);
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(p) {
                        b.add_edge(u, v).expect("in range");
                    }
                }
            }
            if let Some(w) = consider(b.build(), &mut tried)? {
                return Ok(w);
            }
        }
    }

    Err(GadgetError::SearchExhausted { tau, candidates: tried })
}

/// Three disjoint copies of the `tau` witness. Removing any up-to-two
/// vertices leaves a copy intact, so all three chromatic numbers survive
/// such removals.
pub fn gamma_triple(tau: u32) -> Result<Graph, GadgetError> {
    let witness = gamma_graph(tau)?;
    Ok(triple_of(&witness.graph))
}

pub(crate) fn triple_of(g: &Graph) -> Graph {
    let (triple, _) = disjoint_union(&[g.clone(), g.clone(), g.clone()]);
    triple
}

/// Adjoins one tripled `k - 2` witness per group of `inst`, fully joined to
/// that group. In any valid local or semi-matching k-coloring of the result
/// the groups are forced monochromatic with color 1 or k, so solving the
/// composed graph decides the constrained instance. Returns the composed
/// graph and the vertex range of each group's witness copy.
pub fn equality_compose(
    inst: &ConstrainedInstance,
    k: u32,
    mode: ColoringMode,
) -> Result<(Graph, Vec<Range<usize>>), GadgetError> {
    let witness = gamma_graph(k.checked_sub(2).filter(|_| k >= 3).ok_or(GadgetError::KTooSmall(k))?)?;
    equality_compose_with(inst, k, mode, &witness)
}

/// [`equality_compose`] with an explicitly provided (e.g. cached) witness.
pub fn equality_compose_with(
    inst: &ConstrainedInstance,
    k: u32,
    mode: ColoringMode,
    witness: &GammaWitness,
) -> Result<(Graph, Vec<Range<usize>>), GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall(k));
    }
    if mode == ColoringMode::Proper {
        return Err(GadgetError::ProperModeUnsupported);
    }
    if witness.tau != k - 2 {
        return Err(GadgetError::BadWitness(format!(
            "need a witness for tau = {} but got tau = {}",
            k - 2,
            witness.tau
        )));
    }
    let triple = triple_of(&witness.graph);
    let mut b = GraphBuilder::from_graph(inst.graph());
    let mut copies = Vec::with_capacity(inst.groups().len());
    for group in inst.groups() {
        let offset = b.append(&triple);
        let range = offset..offset + triple.n();
        for &u in group {
            for w in range.clone() {
                b.add_edge(u, w).expect("in range");
            }
        }
        copies.push(range);
    }
    Ok((b.build(), copies))
}

/// File name of the cache entry for `tau`.
fn cache_file(dir: &Path, tau: u32) -> PathBuf {
    dir.join(format!("gamma-{tau:03}.txt"))
}

/// Writes a witness to the cache directory: the graph in the text format,
/// followed by one `w <mode>` section per witness coloring. The write goes
/// through a temp file and a rename.
pub fn write_gamma_cache(dir: &Path, witness: &GammaWitness) -> Result<PathBuf, GadgetError> {
    std::fs::create_dir_all(dir)?;
    let path = cache_file(dir, witness.tau);
    let mut text = format!("c gamma witness tau {}\n", witness.tau);
    text.push_str(&witness.graph.to_dimacs());
    for mode in ColoringMode::ALL {
        text.push_str(&format!("w {mode}\n"));
        text.push_str(&witness.witness(mode).to_text());
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads and re-certifies a cached witness. A missing file returns `Ok(None)`;
/// a malformed or wrong entry is an error, never a silently trusted witness.
pub fn read_gamma_cache(dir: &Path, tau: u32) -> Result<Option<GammaWitness>, GadgetError> {
    let path = cache_file(dir, tau);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |msg: &str| GadgetError::Cache { path: path.clone(), msg: msg.to_string() };

    let mut sections: Vec<(Option<ColoringMode>, String)> = vec![(None, String::new())];
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("w ") {
            let mode: ColoringMode = rest.trim().parse().map_err(|e: String| bad(&e))?;
            sections.push((Some(mode), String::new()));
        } else {
            let (_, buf) = sections.last_mut().expect("nonempty");
            buf.push_str(line);
            buf.push('\n');
        }
    }
    let graph = Graph::from_dimacs(&sections[0].1)?;
    let mut by_mode: BTreeMap<ColoringMode, KColoring> = BTreeMap::new();
    for (mode, body) in &sections[1..] {
        let mode = mode.expect("tagged section");
        by_mode.insert(mode, KColoring::from_text(body)?);
    }
    let mut witness = GammaWitness {
        tau,
        graph,
        proper: by_mode
            .remove(&ColoringMode::Proper)
            .ok_or_else(|| bad("missing proper witness section"))?,
        local: by_mode
            .remove(&ColoringMode::Local)
            .ok_or_else(|| bad("missing local witness section"))?,
        semi_matching: by_mode
            .remove(&ColoringMode::SemiMatching)
            .ok_or_else(|| bad("missing semi-matching witness section"))?,
        certificate: GammaCertificate::default(),
    };
    witness.certificate = witness.certify(None)?;
    Ok(Some(witness))
}

/// Cache-first witness lookup: re-certified cache hit, else search, storing
/// any newly found witness.
pub fn load_or_search_gamma(
    dir: &Path,
    tau: u32,
    opts: &GammaSearchOptions,
) -> Result<GammaWitness, GadgetError> {
    if let Some(witness) = read_gamma_cache(dir, tau)? {
        return Ok(witness);
    }
    let witness = if builtin_gamma_graph(tau).is_some() {
        gamma_graph(tau)?
    } else {
        gamma_search(tau, opts)?
    };
    write_gamma_cache(dir, &witness)?;
    Ok(witness)
}

/// Decision helper used in tests and suites: whether the apex join of the
/// local-mode core admits a valid local coloring with `k` colors.
pub fn core_apex_join(k: u32) -> Result<Graph, GadgetError> {
    let core = l_graph(k)?;
    let all: Vec<usize> = (0..core.n()).collect();
    let (joined, _) = crate::graph::add_vertex_joined(&core, &all)?;
    Ok(joined)
}

/// Convenience wrapper exposing the solver decision for one port pattern.
pub fn pattern_extends_by_search(
    k: u32,
    mode: ColoringMode,
    pattern: &PortPattern,
    node_budget: Option<u64>,
) -> Result<bool, GadgetError> {
    let gadget = nae_gadget(k, mode)?;
    let cfg = SolverConfig::new(mode, k)
        .with_budget(node_budget)
        .with_deterministic(false);
    let fixed = BTreeMap::from([
        (gadget.u1, pattern.u1),
        (gadget.u2, pattern.u2),
        (gadget.v, pattern.v),
    ]);
    let (witness, _) = find_coloring_with_stats(&gadget.graph, &cfg, &fixed)?;
    Ok(witness.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_local;

    #[test]
    fn l_graph_small_cases() {
        assert_eq!(l_graph(3).unwrap().n(), 1);
        // k=4: two isolated vertices.
        let g = l_graph(4).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
        // k=5: a single edge.
        let g = l_graph(5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        // k=6: the 4-cycle.
        let g = l_graph(6).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert!(matches!(l_graph(2), Err(GadgetError::KTooSmall(2))));
    }

    #[test]
    fn gadget_shapes() {
        let g = nae_gadget(3, ColoringMode::Local).unwrap();
        assert_eq!(g.graph.n(), 5);
        let edges: Vec<_> = g.graph.edges().collect();
        assert_eq!(edges, vec![(0, 2), (0, 4), (1, 3), (1, 4)]);
        assert_eq!((g.u1, g.u2, g.v), (2, 3, 4));

        assert_eq!(nae_gadget(5, ColoringMode::Local).unwrap().graph.n(), 7);
        assert_eq!(nae_gadget(4, ColoringMode::SemiMatching).unwrap().graph.n(), 7);
        assert!(matches!(
            nae_gadget(4, ColoringMode::Proper),
            Err(GadgetError::ProperModeUnsupported)
        ));
    }

    #[test]
    fn pattern_table_spot_checks() {
        let table = extendable_port_patterns(4, ColoringMode::Local).unwrap();
        let get = |u1, u2, v| {
            table
                .iter()
                .find(|(p, _)| (p.u1, p.u2, p.v) == (u1, u2, v))
                .unwrap()
                .1
        };
        assert!(!get(1, 1, 4));
        assert!(!get(4, 4, 1));
        assert!(get(4, 4, 4));
        assert!(get(4, 1, 4));
        assert!(get(1, 1, 1));
    }

    #[test]
    fn extension_examples() {
        // Even k: the mixed core takes consecutive pair colors.
        let p = PortPattern::new(6, 6, 1, 6).unwrap();
        let w = extend_gadget_coloring(6, ColoringMode::Local, &p).unwrap().unwrap();
        let gadget = nae_gadget(6, ColoringMode::Local).unwrap();
        assert_eq!(&w.colors()[gadget.core2], &[2, 3, 4, 5]);
        assert!(is_local(&gadget.graph, &w).unwrap());

        // Odd k: repeated even colors on the pair, 2 and k-1 on the rest.
        let p = PortPattern::new(7, 7, 1, 7).unwrap();
        let w = extend_gadget_coloring(7, ColoringMode::Local, &p).unwrap().unwrap();
        let gadget = nae_gadget(7, ColoringMode::Local).unwrap();
        assert_eq!(&w.colors()[gadget.core2], &[4, 4, 2, 6]);
        assert!(is_local(&gadget.graph, &w).unwrap());

        // Blocked patterns yield no extension.
        let p = PortPattern::new(3, 1, 1, 3).unwrap();
        assert_eq!(extend_gadget_coloring(3, ColoringMode::Local, &p).unwrap(), None);

        // k=3 all-high extends; cross-check against full enumeration of the
        // 3^5 assignments of the 5-vertex gadget.
        let p = PortPattern::new(3, 3, 3, 3).unwrap();
        let w = extend_gadget_coloring(3, ColoringMode::Local, &p).unwrap().unwrap();
        let gadget = nae_gadget(3, ColoringMode::Local).unwrap();
        assert!(is_local(&gadget.graph, &w).unwrap());
        let mut any = false;
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                let cand = KColoring::new(3, vec![a, b, 3, 3, 3]).unwrap();
                if is_local(&gadget.graph, &cand).unwrap() {
                    any = true;
                }
            }
        }
        assert!(any);
    }

    #[test]
    fn all_local_extensions_validate_up_to_k12() {
        for k in 3..=12 {
            for p in PortPattern::all(k) {
                let got = extend_gadget_coloring(k, ColoringMode::Local, &p).unwrap();
                assert_eq!(got.is_some(), pattern_is_extendable(k, &p), "k={k} {p:?}");
                if let Some(w) = got {
                    let gadget = nae_gadget(k, ColoringMode::Local).unwrap();
                    assert!(is_local(&gadget.graph, &w).unwrap(), "k={k} {p:?}");
                }
            }
        }
    }

    #[test]
    fn apex_join_of_core_is_the_next_matching_graph() {
        // Joining an apex to every vertex of C(n, r) gives exactly C(n+1, r):
        // the apex takes the largest index, which sits outside the removed
        // matching, so the edge sets coincide literally.
        for k in 3..=9u32 {
            let core = l_graph(k).unwrap();
            let r = core.n() * core.n().saturating_sub(1) / 2 - core.edge_count();
            let joined = core_apex_join(k).unwrap();
            assert_eq!(joined, c_graph(core.n() + 1, r).unwrap(), "k={k}");
        }
    }

    #[test]
    fn gamma_builtins_certify() {
        for tau in 1..=3 {
            let w = gamma_graph(tau).unwrap();
            assert_eq!(w.tau, tau);
            let cert = w.certify(None).unwrap();
            assert_eq!(cert, w.certificate);
            if tau > 1 {
                assert!(cert.refutation_nodes.iter().all(|&n| n > 0));
            }
        }
        assert!(matches!(gamma_graph(0), Err(GadgetError::InvalidTau)));
        assert_eq!(gamma_graph(1).unwrap().graph.n(), 1);
        assert_eq!(gamma_graph(2).unwrap().graph.edge_count(), 1);
        assert_eq!(gamma_graph(3).unwrap().graph.n(), 5);
    }

    #[test]
    fn gamma_triples() {
        assert_eq!(gamma_triple(1).unwrap().n(), 3);
        let t2 = gamma_triple(2).unwrap();
        assert_eq!((t2.n(), t2.edge_count()), (6, 3));
        let t3 = gamma_triple(3).unwrap();
        assert_eq!((t3.n(), t3.edge_count()), (15, 15));
    }

    #[test]
    fn compose_examples() {
        // Single group over one vertex of an edge, k=3: three new vertices
        // all joined to that vertex.
        let inst = ConstrainedInstance::new(complete_graph(2), vec![vec![0]]).unwrap();
        let (g, copies) = equality_compose(&inst, 3, ColoringMode::Local).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(copies, vec![2..5]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);

        // No groups: the graph is unchanged.
        let inst = ConstrainedInstance::new(complete_graph(2), vec![]).unwrap();
        let (g, copies) = equality_compose(&inst, 4, ColoringMode::Local).unwrap();
        assert_eq!(g, complete_graph(2));
        assert!(copies.is_empty());

        // Two singleton groups at k=4 adjoin two 6-vertex triples.
        let inst = ConstrainedInstance::new(complete_graph(2), vec![vec![0], vec![1]]).unwrap();
        let (g, _) = equality_compose(&inst, 4, ColoringMode::Local).unwrap();
        assert_eq!(g.n(), 14);

        assert!(matches!(
            equality_compose(&inst, 4, ColoringMode::Proper),
            Err(GadgetError::ProperModeUnsupported)
        ));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("gamma-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let w = gamma_graph(3).unwrap();
        write_gamma_cache(&dir, &w).unwrap();
        let loaded = read_gamma_cache(&dir, 3).unwrap().unwrap();
        assert_eq!(loaded.graph, w.graph);
        assert_eq!(loaded.local, w.local);
        assert!(read_gamma_cache(&dir, 2).unwrap().is_none());

        // A corrupted entry fails certification instead of being trusted.
        let path = cache_file(&dir, 3);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("s 3", "s 4")).unwrap();
        assert!(read_gamma_cache(&dir, 3).is_err());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn mycielski_of_edge_is_5_cycle() {
        let m = mycielski(&complete_graph(2));
        assert_eq!((m.n(), m.edge_count()), (5, 5));
        // Odd cycle: proper chromatic number 3.
        let chi = crate::solver::chromatic_number(&m, ColoringMode::Proper, 5).unwrap();
        assert_eq!(chi, Some(3));
    }
}

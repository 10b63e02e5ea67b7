//! Exact decision and search procedures for k-colorings in each mode,
//! including group-constrained instances and chromatic-number computation.
//!
//! The engine is a depth-first search over vertices with incremental
//! constraint checks: a branch is cut as soon as any fully-colored pair or
//! triple (or consecutive-class neighborhood, in semi-matching mode) already
//! violates the predicate. Pruning is sound: it never cuts a branch that has
//! a valid total extension, so with the deterministic flag set and colors
//! tried in ascending order over vertices in index order, the first witness
//! found is the lexicographically smallest valid assignment.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::{ColoringMode, KColoring};
use crate::graph::{remove_vertices, Graph};

/// Default cap on search-tree nodes. All shipped verification suites fit
/// well under it.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest group count `solve_constrained_oracle` will enumerate (2^t cases).
pub const ORACLE_GROUP_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("node budget must be positive when set")]
    InvalidBudget,
    #[error("search stopped: node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("fixed color {color} for vertex {vertex} is outside 1..={k}")]
    FixedColorOutOfRange { vertex: usize, color: u32, k: u32 },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("group {index} is empty")]
    EmptyGroup { index: usize },
    #[error("group-constrained solving requires k >= 3 (got {k})")]
    GroupsNeedThreeColors { k: u32 },
    #[error("cannot enumerate {groups} group assignments (cap {cap})")]
    TooManyGroups { groups: usize, cap: usize },
}

/// Search configuration: mode, palette size, node budget, and determinism.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mode: ColoringMode,
    pub k: u32,
    /// `None` means unlimited.
    pub node_budget: Option<u64>,
    /// With the flag set, the returned witness is the lexicographically
    /// smallest valid assignment in vertex order. Without it, branching
    /// follows descending degree (ties by index), which is usually faster;
    /// the decision answer is the same either way.
    pub deterministic: bool,
}

impl SolverConfig {
    pub fn new(mode: ColoringMode, k: u32) -> Self {
        Self {
            mode,
            k,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            deterministic: true,
        }
    }

    pub fn with_budget(mut self, node_budget: Option<u64>) -> Self {
        self.node_budget = node_budget;
        self
    }

    pub fn with_deterministic(mut self, deterministic: bool) -> Self {
        self.deterministic = deterministic;
        self
    }

    fn check(&self) -> Result<(), SolverError> {
        if self.k == 0 {
            return Err(SolverError::InvalidK);
        }
        if self.node_budget == Some(0) {
            return Err(SolverError::InvalidBudget);
        }
        Ok(())
    }
}

/// Counters reported by the stats-returning entry points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Number of (vertex, color) candidates attempted.
    pub nodes: u64,
}

/// A graph together with an ordered sequence of vertex groups, each of which
/// must be monochromatic in color 1 or k. Groups may overlap.
#[derive(Debug, Clone)]
pub struct ConstrainedInstance {
    graph: Graph,
    groups: Vec<Vec<usize>>,
}

impl ConstrainedInstance {
    pub fn new(graph: Graph, groups: Vec<Vec<usize>>) -> Result<Self, SolverError> {
        let mut cleaned = Vec::with_capacity(groups.len());
        for (index, group) in groups.into_iter().enumerate() {
            let mut g: Vec<usize> = group;
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(SolverError::EmptyGroup { index });
            }
            for &v in &g {
                if v >= graph.n() {
                    return Err(SolverError::VertexOutOfRange { vertex: v, n: graph.n() });
                }
            }
            cleaned.push(g);
        }
        Ok(Self { graph, groups: cleaned })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Domain {
    Any,
    Fixed(u32),
    OneOrK,
}

fn candidate(domain: Domain, k: u32, i: usize) -> Option<u32> {
    match domain {
        Domain::Any => (i < k as usize).then(|| i as u32 + 1),
        Domain::Fixed(c) => (i == 0).then_some(c),
        Domain::OneOrK => match i {
            0 => Some(1),
            1 if k > 1 => Some(k),
            _ => None,
        },
    }
}

struct Engine {
    k: u32,
    mode: ColoringMode,
    adj: Vec<Vec<usize>>,
    // Local-mode triple constraints (vertex sets with >= 2 internal edges
    // and the spread they require), indexed per member vertex.
    triples: Vec<([usize; 3], u32)>,
    triples_at: Vec<Vec<u32>>,
    // Branching order over class representatives; members share the color.
    order: Vec<usize>,
    members: Vec<Vec<usize>>,
    domain: Vec<Domain>,
    colors: Vec<u32>,
    // Semi-matching bookkeeping: colored neighbors one below / one above.
    cnt_lo: Vec<u32>,
    cnt_hi: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Engine {
    fn new(g: &Graph, cfg: &SolverConfig) -> Self {
        let n = g.n();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| g.neighbors(v).iter().copied().collect())
            .collect();

        let mut triples = Vec::new();
        let mut triples_at = vec![Vec::new(); n];
        if cfg.mode == ColoringMode::Local {
            for center in 0..n {
                let nbrs = &adj[center];
                for (i, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[i + 1..] {
                        let closing = g.has_edge(a, b);
                        if closing && center > a {
                            continue;
                        }
                        let req = if closing { 3 } else { 2 };
                        let idx = triples.len() as u32;
                        triples.push(([a, center, b], req));
                        triples_at[a].push(idx);
                        triples_at[center].push(idx);
                        triples_at[b].push(idx);
                    }
                }
            }
        }

        Engine {
            k: cfg.k,
            mode: cfg.mode,
            adj,
            triples,
            triples_at,
            order: Vec::new(),
            members: Vec::new(),
            domain: vec![Domain::Any; n],
            colors: vec![0; n],
            cnt_lo: vec![0; n],
            cnt_hi: vec![0; n],
            nodes: 0,
            budget: u64::MAX,
        }
    }

    /// Checks whether `v` can take color `c` alongside the currently colored
    /// vertices, and commits the assignment if so.
    fn try_assign(&mut self, v: usize, c: u32) -> bool {
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.colors[u] == c {
                return false;
            }
        }
        match self.mode {
            ColoringMode::Proper => {}
            ColoringMode::Local => {
                for ti in 0..self.triples_at[v].len() {
                    let idx = self.triples_at[v][ti] as usize;
                    let ([a, b, t], req) = self.triples[idx];
                    let (ca, cb, ct) = (
                        if a == v { c } else { self.colors[a] },
                        if b == v { c } else { self.colors[b] },
                        if t == v { c } else { self.colors[t] },
                    );
                    if ca == 0 || cb == 0 || ct == 0 {
                        continue;
                    }
                    let spread = ca.abs_diff(cb).max(ca.abs_diff(ct)).max(cb.abs_diff(ct));
                    if spread < req {
                        return false;
                    }
                }
            }
            ColoringMode::SemiMatching => {
                let mut lo = 0u32;
                let mut hi = 0u32;
                for i in 0..self.adj[v].len() {
                    let u = self.adj[v][i];
                    let cu = self.colors[u];
                    if cu == 0 {
                        continue;
                    }
                    if cu + 1 == c {
                        lo += 1;
                        if lo > 1 {
                            return false;
                        }
                    } else if cu == c + 1 {
                        hi += 1;
                        if hi > 1 {
                            return false;
                        }
                        if self.cnt_lo[u] == 1 {
                            return false;
                        }
                    }
                    if cu + 1 == c && self.cnt_hi[u] == 1 {
                        return false;
                    }
                }
                // Commit the count updates.
                self.cnt_lo[v] = lo;
                self.cnt_hi[v] = hi;
                for i in 0..self.adj[v].len() {
                    let u = self.adj[v][i];
                    let cu = self.colors[u];
                    if cu == c + 1 {
                        self.cnt_lo[u] += 1;
                    } else if cu != 0 && cu + 1 == c {
                        self.cnt_hi[u] += 1;
                    }
                }
            }
        }
        self.colors[v] = c;
        true
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        debug_assert_ne!(c, 0);
        if self.mode == ColoringMode::SemiMatching {
            for i in 0..self.adj[v].len() {
                let u = self.adj[v][i];
                let cu = self.colors[u];
                if cu == c + 1 {
                    self.cnt_lo[u] -= 1;
                } else if cu != 0 && cu + 1 == c {
                    self.cnt_hi[u] -= 1;
                }
            }
            self.cnt_lo[v] = 0;
            self.cnt_hi[v] = 0;
        }
        self.colors[v] = 0;
    }

    fn dfs(&mut self, pos: usize) -> Result<bool, SolverError> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let rep = self.order[pos];
        let domain = self.domain[rep];
        let mut i = 0;
        while let Some(c) = candidate(domain, self.k, i) {
            i += 1;
            if self.nodes >= self.budget {
                return Err(SolverError::BudgetExhausted { budget: self.budget });
            }
            self.nodes += 1;

            let class_len = self.members[rep].len();
            let mut assigned = 0;
            while assigned < class_len {
                let m = self.members[rep][assigned];
                if !self.try_assign(m, c) {
                    break;
                }
                assigned += 1;
            }
            if assigned == class_len && self.dfs(pos + 1)? {
                return Ok(true);
            }
            for j in (0..assigned).rev() {
                let m = self.members[rep][j];
                self.unassign(m);
            }
        }
        Ok(false)
    }
}

struct Prepared {
    engine: Engine,
    /// Set when the fixed assignment or group compilation is contradictory,
    /// in which case no coloring exists and no search is needed.
    inconsistent: bool,
}

fn prepare(
    g: &Graph,
    cfg: &SolverConfig,
    fixed: &BTreeMap<usize, u32>,
    groups: Option<&[Vec<usize>]>,
) -> Result<Prepared, SolverError> {
    cfg.check()?;
    let n = g.n();
    for (&v, &c) in fixed {
        if v >= n {
            return Err(SolverError::VertexOutOfRange { vertex: v, n });
        }
        if c == 0 || c > cfg.k {
            return Err(SolverError::FixedColorOutOfRange { vertex: v, color: c, k: cfg.k });
        }
    }

    // Union-find over forced-equal vertices; representatives are class minima.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut root = v;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = v;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let mut grouped = vec![false; n];
    if let Some(groups) = groups {
        for group in groups {
            for &v in group {
                grouped[v] = true;
                let (ra, rb) = (find(&mut parent, group[0]), find(&mut parent, v));
                if ra != rb {
                    let (lo, hi) = (ra.min(rb), ra.max(rb));
                    parent[hi] = lo;
                }
            }
        }
    }

    let mut engine = Engine::new(g, cfg);
    engine.budget = cfg.node_budget.unwrap_or(u64::MAX);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut reps = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if r == v {
            reps.push(v);
        }
        members[r].push(v);
    }

    // Domains: fixed colors win (conflicts make the instance inconsistent),
    // grouped classes are restricted to {1, k}.
    let mut inconsistent = false;
    let mut domain = vec![Domain::Any; n];
    for &r in &reps {
        if members[r].iter().any(|&m| grouped[m]) {
            domain[r] = Domain::OneOrK;
        }
    }
    for (&v, &c) in fixed {
        let r = find(&mut parent, v);
        match domain[r] {
            Domain::Fixed(prev) if prev != c => inconsistent = true,
            Domain::OneOrK if c != 1 && c != cfg.k => inconsistent = true,
            _ => domain[r] = Domain::Fixed(c),
        }
    }

    // Classes with forced colors branch first: each has exactly one
    // candidate, so their position cannot change which assignments exist,
    // and placing them up front lets every later decision see their colors.
    // Lexicographic minimality over the free vertices is unaffected because
    // all candidate assignments agree on the forced positions.
    let (fixed_reps, free_reps): (Vec<usize>, Vec<usize>) = reps
        .iter()
        .partition(|&&r| matches!(domain[r], Domain::Fixed(_)));

    if cfg.deterministic {
        // Free representatives are class minima, so index order over them
        // yields the lexicographically smallest total assignment.
        engine.order = fixed_reps.into_iter().chain(free_reps).collect();
    } else {
        // Static max-adjacency order: seed with the forced classes, then
        // always branch next on the class with most edges into the ordered
        // prefix (ties by degree, then index). Keeping each vertex close to
        // its colored neighbors keeps refutations close to their cause.
        let rep_of: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        let class_degree: Vec<usize> = (0..n)
            .map(|r| members[r].iter().map(|&m| engine.adj[m].len()).sum())
            .collect();
        let mut weight: Vec<usize> = vec![0; n];
        let mut placed = vec![false; n];
        let mut ordered = Vec::with_capacity(reps.len());
        let place = |r: usize, weight: &mut Vec<usize>, placed: &mut Vec<bool>, ordered: &mut Vec<usize>| {
            placed[r] = true;
            ordered.push(r);
            for &m in &members[r] {
                for &u in &engine.adj[m] {
                    let ru = rep_of[u];
                    if !placed[ru] {
                        weight[ru] += 1;
                    }
                }
            }
        };
        for &r in &fixed_reps {
            place(r, &mut weight, &mut placed, &mut ordered);
        }
        for _ in 0..free_reps.len() {
            let &next = free_reps
                .iter()
                .filter(|&&r| !placed[r])
                .max_by_key(|&&r| (weight[r], class_degree[r], std::cmp::Reverse(r)))
                .expect("unplaced rep remains");
            place(next, &mut weight, &mut placed, &mut ordered);
        }
        engine.order = ordered;
    }
    engine.members = members;
    engine.domain = domain;

    Ok(Prepared { engine, inconsistent })
}

fn run(prepared: Prepared) -> Result<(Option<KColoring>, SearchStats), SolverError> {
    let mut engine = prepared.engine;
    if prepared.inconsistent {
        return Ok((None, SearchStats { nodes: 0 }));
    }
    let found = engine.dfs(0)?;
    let stats = SearchStats { nodes: engine.nodes };
    if found {
        let coloring = KColoring::new(engine.k, engine.colors.clone()).expect("search colors in range");
        Ok((Some(coloring), stats))
    } else {
        Ok((None, stats))
    }
}

/// Searches for a coloring of `g` that is valid in `cfg.mode`, extends
/// `fixed`, and uses colors `1..=cfg.k`. Returns `None` when no such coloring
/// exists; running out of budget is a distinct error, not a `None`.
pub fn find_coloring(
    g: &Graph,
    cfg: &SolverConfig,
    fixed: &BTreeMap<usize, u32>,
) -> Result<Option<KColoring>, SolverError> {
    find_coloring_with_stats(g, cfg, fixed).map(|(w, _)| w)
}

/// [`find_coloring`] plus search statistics.
pub fn find_coloring_with_stats(
    g: &Graph,
    cfg: &SolverConfig,
    fixed: &BTreeMap<usize, u32>,
) -> Result<(Option<KColoring>, SearchStats), SolverError> {
    let prepared = prepare(g, cfg, fixed, None)?;
    let result = run(prepared)?;
    #[cfg(debug_assertions)]
    if let (Some(w), _) = &result {
        debug_assert_eq!(crate::coloring::validate(g, w, cfg.mode), Ok(true));
    }
    Ok(result)
}

/// Searches for a valid coloring in which every group of `inst` is
/// monochromatic with color 1 or `cfg.k`. Rejects `k < 3`, where the
/// constraint collapses.
pub fn solve_constrained(
    inst: &ConstrainedInstance,
    cfg: &SolverConfig,
) -> Result<Option<KColoring>, SolverError> {
    solve_constrained_with_stats(inst, cfg).map(|(w, _)| w)
}

/// [`solve_constrained`] plus search statistics.
pub fn solve_constrained_with_stats(
    inst: &ConstrainedInstance,
    cfg: &SolverConfig,
) -> Result<(Option<KColoring>, SearchStats), SolverError> {
    if cfg.k < 3 {
        return Err(SolverError::GroupsNeedThreeColors { k: cfg.k });
    }
    let prepared = prepare(inst.graph(), cfg, &BTreeMap::new(), Some(inst.groups()))?;
    run(prepared)
}

/// Decision-level cross-check for [`solve_constrained`], implemented on an
/// independent route: enumerate all `2^t` assignments of `{1, k}` to the
/// groups, fix them, and run [`find_coloring`] separately on every connected
/// component of the graph.
pub fn solve_constrained_oracle(
    inst: &ConstrainedInstance,
    cfg: &SolverConfig,
) -> Result<bool, SolverError> {
    if cfg.k < 3 {
        return Err(SolverError::GroupsNeedThreeColors { k: cfg.k });
    }
    cfg.check()?;
    let t = inst.groups().len();
    if t > ORACLE_GROUP_CAP {
        return Err(SolverError::TooManyGroups { groups: t, cap: ORACLE_GROUP_CAP });
    }
    let g = inst.graph();
    let components = g.connected_components();
    let sub_cfg = cfg.clone().with_deterministic(false);

    'outer: for mask in 0u64..(1u64 << t) {
        let mut fixed: BTreeMap<usize, u32> = BTreeMap::new();
        for (i, group) in inst.groups().iter().enumerate() {
            let color = if mask >> i & 1 == 1 { cfg.k } else { 1 };
            for &v in group {
                match fixed.insert(v, color) {
                    Some(prev) if prev != color => continue 'outer,
                    _ => {}
                }
            }
        }
        let mut all_ok = true;
        for comp in &components {
            let complement: Vec<usize> = (0..g.n()).filter(|v| !comp.contains(v)).collect();
            let sub = remove_vertices(g, &complement).expect("vertices in range");
            let sub_fixed: BTreeMap<usize, u32> = comp
                .iter()
                .enumerate()
                .filter_map(|(new, old)| fixed.get(old).map(|&c| (new, c)))
                .collect();
            if find_coloring(&sub, &sub_cfg, &sub_fixed)?.is_none() {
                all_ok = false;
                break;
            }
        }
        if all_ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smallest `k <= k_max` admitting a valid coloring in `mode`, or `None` when
/// even `k_max` colors do not suffice. Budget exhaustion at any `k` aborts
/// with an error rather than guessing.
pub fn chromatic_number(
    g: &Graph,
    mode: ColoringMode,
    k_max: u32,
) -> Result<Option<u32>, SolverError> {
    chromatic_number_with_stats(g, mode, k_max, Some(DEFAULT_NODE_BUDGET)).map(|(k, _)| k)
}

/// [`chromatic_number`] with an explicit budget and accumulated statistics.
pub fn chromatic_number_with_stats(
    g: &Graph,
    mode: ColoringMode,
    k_max: u32,
    node_budget: Option<u64>,
) -> Result<(Option<u32>, SearchStats), SolverError> {
    let mut total = SearchStats::default();
    for k in 1..=k_max {
        let cfg = SolverConfig::new(mode, k)
            .with_budget(node_budget)
            .with_deterministic(false);
        let (witness, stats) = find_coloring_with_stats(g, &cfg, &BTreeMap::new())?;
        total.nodes += stats.nodes;
        if witness.is_some() {
            return Ok((Some(k), total));
        }
    }
    Ok((None, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate;
    use crate::graph::{c_graph, complete_graph, cycle_graph};

    fn no_fixed() -> BTreeMap<usize, u32> {
        BTreeMap::new()
    }

    #[test]
    fn triangle_has_no_local_3_coloring() {
        let cfg = SolverConfig::new(ColoringMode::Local, 3);
        assert_eq!(find_coloring(&complete_graph(3), &cfg, &no_fixed()).unwrap(), None);
    }

    #[test]
    fn triangle_local_4_witness_is_lex_least() {
        // Exhaustive enumeration over all 4^3 assignments in lexicographic
        // order confirms (1,2,4) is the first valid one.
        let g = complete_graph(3);
        let mut expected = None;
        'outer: for a in 1..=4u32 {
            for b in 1..=4u32 {
                for c in 1..=4u32 {
                    let cand = KColoring::new(4, vec![a, b, c]).unwrap();
                    if validate(&g, &cand, ColoringMode::Local).unwrap() {
                        expected = Some(cand);
                        break 'outer;
                    }
                }
            }
        }
        let expected = expected.unwrap();
        assert_eq!(expected.colors(), &[1, 2, 4]);

        let cfg = SolverConfig::new(ColoringMode::Local, 4);
        let found = find_coloring(&g, &cfg, &no_fixed()).unwrap().unwrap();
        assert_eq!(found, expected);
    }

    #[test]
    fn single_vertex_single_color() {
        let g = complete_graph(1);
        for mode in ColoringMode::ALL {
            let cfg = SolverConfig::new(mode, 1);
            let w = find_coloring(&g, &cfg, &no_fixed()).unwrap().unwrap();
            assert_eq!(w.colors(), &[1]);
        }
    }

    #[test]
    fn fixed_colors_are_honored() {
        let g = complete_graph(2);
        let cfg = SolverConfig::new(ColoringMode::Proper, 3);
        let fixed = BTreeMap::from([(0usize, 2u32)]);
        let w = find_coloring(&g, &cfg, &fixed).unwrap().unwrap();
        assert_eq!(w.color(0), 2);
        assert_eq!(w.color(1), 1); // lex-least extension

        let bad = BTreeMap::from([(0usize, 7u32)]);
        assert!(matches!(
            find_coloring(&g, &cfg, &bad),
            Err(SolverError::FixedColorOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_unsat() {
        let g = complete_graph(4);
        let cfg = SolverConfig::new(ColoringMode::Local, 3).with_budget(Some(1));
        assert!(matches!(
            find_coloring(&g, &cfg, &no_fixed()),
            Err(SolverError::BudgetExhausted { budget: 1 })
        ));
        // Same query without the budget simply reports no coloring.
        let cfg = SolverConfig::new(ColoringMode::Local, 3);
        assert_eq!(find_coloring(&g, &cfg, &no_fixed()).unwrap(), None);
    }

    #[test]
    fn constrained_k2_groups() {
        let g = complete_graph(2);
        let inst = ConstrainedInstance::new(g.clone(), vec![vec![0], vec![1]]).unwrap();
        let cfg = SolverConfig::new(ColoringMode::Local, 3);
        let w = solve_constrained(&inst, &cfg).unwrap().unwrap();
        assert_eq!(w.colors(), &[1, 3]);

        // A monochromatic group across an edge is impossible.
        let inst = ConstrainedInstance::new(g, vec![vec![0, 1]]).unwrap();
        for mode in ColoringMode::ALL {
            let cfg = SolverConfig::new(mode, 4);
            assert_eq!(solve_constrained(&inst, &cfg).unwrap(), None);
        }

        let single = ConstrainedInstance::new(complete_graph(1), vec![vec![0]]).unwrap();
        let cfg = SolverConfig::new(ColoringMode::Local, 3);
        let w = solve_constrained(&single, &cfg).unwrap().unwrap();
        assert_eq!(w.colors(), &[1]);
    }

    #[test]
    fn zero_budget_is_rejected() {
        let cfg = SolverConfig::new(ColoringMode::Proper, 2).with_budget(Some(0));
        assert!(matches!(
            find_coloring(&complete_graph(2), &cfg, &no_fixed()),
            Err(SolverError::InvalidBudget)
        ));
    }

    #[test]
    fn constrained_rejects_small_k() {
        let inst = ConstrainedInstance::new(complete_graph(1), vec![vec![0]]).unwrap();
        let cfg = SolverConfig::new(ColoringMode::Local, 2);
        assert!(matches!(
            solve_constrained(&inst, &cfg),
            Err(SolverError::GroupsNeedThreeColors { k: 2 })
        ));
        assert!(matches!(
            solve_constrained_oracle(&inst, &cfg),
            Err(SolverError::GroupsNeedThreeColors { k: 2 })
        ));
    }

    #[test]
    fn oracle_agrees_on_small_instances() {
        let cases: Vec<ConstrainedInstance> = vec![
            ConstrainedInstance::new(complete_graph(2), vec![vec![0], vec![1]]).unwrap(),
            ConstrainedInstance::new(complete_graph(2), vec![vec![0, 1]]).unwrap(),
            ConstrainedInstance::new(complete_graph(1), vec![vec![0]]).unwrap(),
            ConstrainedInstance::new(cycle_graph(5), vec![vec![0, 2], vec![1, 3]]).unwrap(),
        ];
        for inst in &cases {
            for mode in ColoringMode::ALL {
                for k in 3..=4 {
                    let cfg = SolverConfig::new(mode, k);
                    let direct = solve_constrained(inst, &cfg).unwrap().is_some();
                    let oracle = solve_constrained_oracle(inst, &cfg).unwrap();
                    assert_eq!(direct, oracle, "mode={mode} k={k}");
                }
            }
        }
    }

    #[test]
    fn constrained_witness_satisfies_groups() {
        let inst =
            ConstrainedInstance::new(cycle_graph(5), vec![vec![0, 2], vec![3]]).unwrap();
        let cfg = SolverConfig::new(ColoringMode::Local, 4);
        if let Some(w) = solve_constrained(&inst, &cfg).unwrap() {
            assert!(validate(inst.graph(), &w, ColoringMode::Local).unwrap());
            for group in inst.groups() {
                let c = w.color(group[0]);
                assert!(c == 1 || c == 4);
                assert!(group.iter().all(|&v| w.color(v) == c));
            }
        } else {
            panic!("expected a witness");
        }
    }

    #[test]
    fn chromatic_number_small_cases() {
        // Known closed form: the local chromatic number of a complete graph
        // on n vertices minus r disjoint edges is floor(1.5 n - 0.5) - r.
        assert_eq!(
            chromatic_number(&complete_graph(3), ColoringMode::Local, 10).unwrap(),
            Some(4)
        );
        assert_eq!(
            chromatic_number(&c_graph(4, 1).unwrap(), ColoringMode::Local, 10).unwrap(),
            Some(4)
        );
        assert_eq!(
            chromatic_number(&complete_graph(1), ColoringMode::Proper, 5).unwrap(),
            Some(1)
        );
        assert_eq!(
            chromatic_number(&complete_graph(1), ColoringMode::Local, 5).unwrap(),
            Some(1)
        );
        assert_eq!(
            chromatic_number(&cycle_graph(5), ColoringMode::SemiMatching, 5).unwrap(),
            Some(3)
        );
        // Cap below the answer reports None.
        assert_eq!(
            chromatic_number(&complete_graph(3), ColoringMode::Local, 3).unwrap(),
            None
        );
    }

    #[test]
    fn deterministic_flag_gives_repeatable_witnesses() {
        let g = c_graph(6, 2).unwrap();
        let cfg = SolverConfig::new(ColoringMode::Local, 8);
        let first = find_coloring(&g, &cfg, &no_fixed()).unwrap();
        for _ in 0..3 {
            assert_eq!(find_coloring(&g, &cfg, &no_fixed()).unwrap(), first);
        }
        // Decision agrees with the degree-ordered search.
        let fast = cfg.clone().with_deterministic(false);
        assert_eq!(
            find_coloring(&g, &fast, &no_fixed()).unwrap().is_some(),
            first.is_some()
        );
    }

    #[test]
    fn empty_graph_trivially_colorable() {
        let g = complete_graph(0);
        let cfg = SolverConfig::new(ColoringMode::Local, 1);
        let w = find_coloring(&g, &cfg, &no_fixed()).unwrap().unwrap();
        assert_eq!(w.n(), 0);
    }
}

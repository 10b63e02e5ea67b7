//! The NAE 3-SAT front end and the two-stage reduction to coloring, with
//! solution lifting in both directions.
//!
//! Stage one builds a group-constrained instance: one vertex per literal with
//! an edge between each variable's two literals, plus one disjoint clause
//! gadget per clause whose ports join the groups of the literals they stand
//! for. Stage two adjoins the tripled equal-chromatic-numbers witness to each
//! group, turning the group constraints into plain graph structure.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::coloring::{ColoringError, ColoringMode, KColoring};
use crate::gadgets::{
    equality_compose_with, extend_gadget_coloring, gamma_graph, nae_gadget, GadgetError,
    GammaWitness, PortPattern,
};
use crate::graph::{Graph, GraphBuilder, GraphError};
use crate::solver::{ConstrainedInstance, SolverError};

/// Cap on variables for the brute-force enumerator.
pub const BRUTE_FORCE_VAR_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("reduction requires k >= 3 (got {0})")]
    KTooSmall(u32),
    #[error("the proper mode has no reduction; use local or semi-matching")]
    ProperModeUnsupported,
    #[error("too many variables for brute force ({vars} > {cap})")]
    TooManyVariables { vars: usize, cap: usize },
    #[error("assignment covers {got} variables but the instance has {want}")]
    AssignmentLength { got: usize, want: usize },
    #[error("assignment does not satisfy clause {clause} (all three literals equal)")]
    UnsatisfiedClause { clause: usize },
    #[error("trace was built for k={trace_k}, mode {trace_mode}, but got k={k}, mode {mode}")]
    TraceMismatch {
        trace_k: u32,
        trace_mode: ColoringMode,
        k: u32,
        mode: ColoringMode,
    },
    #[error("coloring uses k={got} but the trace was built for k={want}")]
    WrongPalette { got: u32, want: u32 },
    #[error("malformed witness: group {group} ({describe}) is not monochromatic in {{1, k}}")]
    MalformedWitness { group: usize, describe: String },
    #[error("trace has no gamma layout; lift the output of the full reduction")]
    MissingGammaLayout,
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Errors from the NAE instance text format, with position diagnostics.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {msg}")]
pub struct NaeParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

/// A literal: a variable index plus a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn positive(var: usize) -> Self {
        Self { var, negated: false }
    }

    pub fn negative(var: usize) -> Self {
        Self { var, negated: true }
    }

    pub fn negate(self) -> Self {
        Self { var: self.var, negated: !self.negated }
    }

    /// Dense index: `2 * var` for a positive literal, `2 * var + 1` for its
    /// negation. Group and literal-vertex tables are keyed by this.
    pub fn index(self) -> usize {
        2 * self.var + usize::from(self.negated)
    }

    pub fn truth(self, assignment: &[bool]) -> bool {
        assignment[self.var] ^ self.negated
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-{}", self.var + 1)
        } else {
            write!(f, "{}", self.var + 1)
        }
    }
}

/// A not-all-equal 3-SAT instance: a variable count and a list of literal
/// triples. Repeated literals inside a clause and repeated clauses are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeInstance {
    num_vars: usize,
    clauses: Vec<[Lit; 3]>,
}

impl NaeInstance {
    pub fn new(num_vars: usize, clauses: Vec<[Lit; 3]>) -> Result<Self, NaeParseError> {
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= num_vars {
                    return Err(NaeParseError {
                        line: 0,
                        column: 0,
                        msg: format!("clause {i}: variable {} out of range", lit.var + 1),
                    });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    /// Renders the instance text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p nae3 {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            out.push_str(&format!("{} {} {}\n", clause[0], clause[1], clause[2]));
        }
        out
    }
}

/// Parses the instance format: a `p nae3 <vars> <clauses>` header, then one
/// clause per line as three nonzero integers (negative means negated).
/// Comment lines start with `c`.
pub fn parse_nae(text: &str) -> Result<NaeInstance, NaeParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Lit; 3]> = Vec::new();

    let column_of = |raw: &str, token: &str| -> usize {
        raw.find(token).map(|i| i + 1).unwrap_or(1)
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("p ") {
            if header.is_some() {
                return Err(NaeParseError { line, column: 1, msg: "duplicate header".into() });
            }
            let mut tok = rest.split_whitespace();
            if tok.next() != Some("nae3") {
                return Err(NaeParseError {
                    line,
                    column: column_of(raw, rest),
                    msg: "expected `p nae3 <num_vars> <num_clauses>`".into(),
                });
            }
            let vars: usize = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(NaeParseError { line, column: 1, msg: "bad variable count".into() })?;
            let count: usize = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(NaeParseError { line, column: 1, msg: "bad clause count".into() })?;
            if vars == 0 && count > 0 {
                return Err(NaeParseError {
                    line,
                    column: 1,
                    msg: "no variables but a nonzero clause count".into(),
                });
            }
            header = Some((vars, count));
            continue;
        }

        let (num_vars, _) = header.ok_or(NaeParseError {
            line,
            column: 1,
            msg: "clause before `p nae3` header".into(),
        })?;
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(NaeParseError {
                line,
                column: 1,
                msg: format!("clause must have exactly 3 literals, found {}", tokens.len()),
            });
        }
        let mut lits = [Lit::positive(0); 3];
        for (i, token) in tokens.iter().enumerate() {
            let column = column_of(raw, token);
            let value: i64 = token.parse().map_err(|_| NaeParseError {
                line,
                column,
                msg: format!("bad literal `{token}`"),
            })?;
            if value == 0 {
                return Err(NaeParseError { line, column, msg: "literal 0 is not allowed".into() });
            }
            let var = value.unsigned_abs() as usize - 1;
            if var >= num_vars {
                return Err(NaeParseError {
                    line,
                    column,
                    msg: format!("literal {value} out of range (instance has {num_vars} variables)"),
                });
            }
            lits[i] = Lit { var, negated: value < 0 };
        }
        clauses.push(lits);
    }

    let (num_vars, declared) = header.ok_or(NaeParseError {
        line: 0,
        column: 0,
        msg: "missing `p nae3` header".into(),
    })?;
    if clauses.len() != declared {
        return Err(NaeParseError {
            line: 0,
            column: 0,
            msg: format!("header declares {declared} clauses but {} were found", clauses.len()),
        });
    }
    NaeInstance::new(num_vars, clauses)
}

/// Whether `assignment` gives every clause at least one true and at least
/// one false literal.
pub fn is_nae_satisfying(inst: &NaeInstance, assignment: &[bool]) -> bool {
    assignment.len() == inst.num_vars
        && inst.clauses.iter().all(|clause| {
            let truths = clause.map(|l| l.truth(assignment));
            truths.contains(&true) && truths.contains(&false)
        })
}

/// Exhaustive satisfiability check; returns the lexicographically first
/// satisfying assignment (false before true, variable 0 most significant).
pub fn brute_force_nae(inst: &NaeInstance) -> Result<Option<Vec<bool>>, ReduceError> {
    let n = inst.num_vars;
    if n > BRUTE_FORCE_VAR_CAP {
        return Err(ReduceError::TooManyVariables { vars: n, cap: BRUTE_FORCE_VAR_CAP });
    }
    for counter in 0u64..(1u64 << n) {
        let assignment: Vec<bool> =
            (0..n).map(|i| counter >> (n - 1 - i) & 1 == 1).collect();
        if is_nae_satisfying(inst, &assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Where one clause gadget landed inside the reduced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseTrace {
    pub u1: usize,
    pub u2: usize,
    pub v: usize,
    pub core1: Range<usize>,
    pub core2: Range<usize>,
}

/// Placement of the adjoined witness copies (full reduction only).
#[derive(Debug, Clone)]
pub struct GammaLayout {
    pub witness: GammaWitness,
    /// Vertex range of the tripled witness copy adjoining each group.
    pub copies: Vec<Range<usize>>,
}

/// Bookkeeping that maps literals and clauses of an instance to vertices of
/// the reduced graph, enabling assignment-to-coloring translation and back.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub k: u32,
    pub mode: ColoringMode,
    /// The color encoding True; False is color 1.
    pub true_color: u32,
    pub num_vars: usize,
    /// Literal index (see [`Lit::index`]) to its stage-one vertex.
    pub literal_vertex: Vec<usize>,
    /// Literal index to its group index (the groups are literal-ordered).
    pub group_of_literal: Vec<usize>,
    /// Group index to member vertices.
    pub groups: Vec<Vec<usize>>,
    pub clauses: Vec<ClauseTrace>,
    pub gamma: Option<GammaLayout>,
}

impl ReductionTrace {
    /// Renders the trace as a stable key-value text document, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("format: nae-reduction-trace v1\n");
        out.push_str(&format!("k: {}\n", self.k));
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("true-color: {}\n", self.true_color));
        out.push_str(&format!("num-vars: {}\n", self.num_vars));
        out.push_str(&format!("num-clauses: {}\n", self.clauses.len()));
        let lit_name = |index: usize| -> String {
            let var = index / 2 + 1;
            if index.is_multiple_of(2) { format!("{var}") } else { format!("-{var}") }
        };
        for (index, &vertex) in self.literal_vertex.iter().enumerate() {
            out.push_str(&format!("literal.{}.vertex: {}\n", lit_name(index), vertex + 1));
        }
        for (index, group) in self.groups.iter().enumerate() {
            let members: Vec<String> = group.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&format!("group.{}: {}\n", lit_name(index), members.join(" ")));
        }
        for (j, c) in self.clauses.iter().enumerate() {
            out.push_str(&format!(
                "clause.{j}.ports: {} {} {}\n",
                c.u1 + 1,
                c.u2 + 1,
                c.v + 1
            ));
            let range = |r: &Range<usize>| {
                if r.is_empty() { "-".to_string() } else { format!("{} {}", r.start + 1, r.end) }
            };
            out.push_str(&format!("clause.{j}.core1: {}\n", range(&c.core1)));
            out.push_str(&format!("clause.{j}.core2: {}\n", range(&c.core2)));
        }
        if let Some(gamma) = &self.gamma {
            out.push_str(&format!("gamma.tau: {}\n", gamma.witness.tau));
            for (index, copy) in gamma.copies.iter().enumerate() {
                out.push_str(&format!(
                    "gamma.copy.{}: {} {}\n",
                    lit_name(index),
                    copy.start + 1,
                    copy.end
                ));
            }
        }
        out
    }
}

fn check_mode(mode: ColoringMode) -> Result<(), ReduceError> {
    if mode == ColoringMode::Proper {
        return Err(ReduceError::ProperModeUnsupported);
    }
    Ok(())
}

/// Stage one: the group-constrained instance for `inst`. The graph is the
/// 2·|vars| literal vertices with one edge per variable, plus one disjoint
/// clause gadget per clause; group χ collects χ's literal vertex, the
/// u-ports of clauses where χ is in position a or b, and the v-ports of
/// clauses whose position-c literal is χ's negation.
pub fn reduce_to_constrained(
    inst: &NaeInstance,
    k: u32,
    mode: ColoringMode,
) -> Result<(ConstrainedInstance, ReductionTrace), ReduceError> {
    if k < 3 {
        return Err(ReduceError::KTooSmall(k));
    }
    check_mode(mode)?;

    let nv = inst.num_vars();
    let mut b = GraphBuilder::new(2 * nv);
    for var in 0..nv {
        b.add_edge(2 * var, 2 * var + 1)?;
        b.set_label(2 * var, format!("x{}", var + 1));
        b.set_label(2 * var + 1, format!("~x{}", var + 1));
    }
    let mut groups: Vec<Vec<usize>> = (0..2 * nv).map(|i| vec![i]).collect();
    let mut clause_traces = Vec::with_capacity(inst.clauses().len());

    for (j, clause) in inst.clauses().iter().enumerate() {
        let gadget = nae_gadget(k, mode)?;
        let offset = b.append(&gadget.graph);
        let (u1, u2, v) = (offset + gadget.u1, offset + gadget.u2, offset + gadget.v);
        b.set_label(u1, format!("c{j}.u1"));
        b.set_label(u2, format!("c{j}.u2"));
        b.set_label(v, format!("c{j}.v"));
        groups[clause[0].index()].push(u1);
        groups[clause[1].index()].push(u2);
        groups[clause[2].negate().index()].push(v);
        clause_traces.push(ClauseTrace {
            u1,
            u2,
            v,
            core1: offset + gadget.core1.start..offset + gadget.core1.end,
            core2: offset + gadget.core2.start..offset + gadget.core2.end,
        });
    }

    let constrained = ConstrainedInstance::new(b.build(), groups.clone())?;
    let trace = ReductionTrace {
        k,
        mode,
        true_color: k,
        num_vars: nv,
        literal_vertex: (0..2 * nv).collect(),
        group_of_literal: (0..2 * nv).collect(),
        groups,
        clauses: clause_traces,
        gamma: None,
    };
    Ok((constrained, trace))
}

/// Both stages: the plain graph whose valid k-colorings correspond to the
/// satisfying assignments of `inst`.
pub fn reduce_full(
    inst: &NaeInstance,
    k: u32,
    mode: ColoringMode,
) -> Result<(Graph, ReductionTrace), ReduceError> {
    if k < 3 {
        return Err(ReduceError::KTooSmall(k));
    }
    let witness = gamma_graph(k - 2)?;
    reduce_full_with(inst, k, mode, witness)
}

/// [`reduce_full`] with an explicitly provided (e.g. cached) witness.
pub fn reduce_full_with(
    inst: &NaeInstance,
    k: u32,
    mode: ColoringMode,
    witness: GammaWitness,
) -> Result<(Graph, ReductionTrace), ReduceError> {
    let (constrained, mut trace) = reduce_to_constrained(inst, k, mode)?;
    let (graph, copies) = equality_compose_with(&constrained, k, mode, &witness)?;
    trace.gamma = Some(GammaLayout { witness, copies });
    Ok((graph, trace))
}

/// Translates a satisfying assignment into a full valid coloring of the
/// reduced graph: true literals' groups take color k, false take 1, clause
/// gadget interiors come from the explicit extensions, and each adjoined
/// witness copy is shifted to `3..=k` next to a color-1 group or kept at
/// `1..=k-2` next to a color-k group.
pub fn lift_assignment(
    inst: &NaeInstance,
    assignment: &[bool],
    k: u32,
    mode: ColoringMode,
    trace: &ReductionTrace,
) -> Result<KColoring, ReduceError> {
    if trace.k != k || trace.mode != mode {
        return Err(ReduceError::TraceMismatch {
            trace_k: trace.k,
            trace_mode: trace.mode,
            k,
            mode,
        });
    }
    if assignment.len() != inst.num_vars() {
        return Err(ReduceError::AssignmentLength {
            got: assignment.len(),
            want: inst.num_vars(),
        });
    }
    let gamma = trace.gamma.as_ref().ok_or(ReduceError::MissingGammaLayout)?;
    let witness_n = gamma.witness.graph.n();
    let n = gamma
        .copies
        .last()
        .map(|r| r.end)
        .unwrap_or_else(|| trace.groups.iter().flatten().copied().max().map_or(0, |v| v + 1));

    let mut colors = vec![0u32; n];
    let lit_color = |lit: Lit| if lit.truth(assignment) { k } else { 1 };

    for var in 0..inst.num_vars() {
        for lit in [Lit::positive(var), Lit::negative(var)] {
            let color = lit_color(lit);
            for &vertex in &trace.groups[trace.group_of_literal[lit.index()]] {
                colors[vertex] = color;
            }
        }
    }

    for (j, clause) in inst.clauses().iter().enumerate() {
        let pattern = PortPattern {
            u1: lit_color(clause[0]),
            u2: lit_color(clause[1]),
            v: lit_color(clause[2].negate()),
        };
        let extension = extend_gadget_coloring(k, mode, &pattern)?
            .ok_or(ReduceError::UnsatisfiedClause { clause: j })?;
        let ct = &trace.clauses[j];
        let core_len = ct.core1.len();
        for (i, dst) in ct.core1.clone().enumerate() {
            colors[dst] = extension.color(i);
        }
        for (i, dst) in ct.core2.clone().enumerate() {
            colors[dst] = extension.color(core_len + i);
        }
        debug_assert_eq!(colors[ct.u1], pattern.u1);
        debug_assert_eq!(colors[ct.u2], pattern.u2);
        debug_assert_eq!(colors[ct.v], pattern.v);
    }

    for (group_index, copy) in gamma.copies.iter().enumerate() {
        let group = &trace.groups[group_index];
        let group_color = colors[group[0]];
        let shift = if group_color == k { 0 } else { 2 };
        let witness_colors = gamma.witness.witness(mode).colors();
        for (offset, dst) in copy.clone().enumerate() {
            colors[dst] = witness_colors[offset % witness_n] + shift;
        }
    }

    Ok(KColoring::new(k, colors)?)
}

/// Reads a truth assignment back out of a valid coloring of the reduced
/// graph: variable x is true iff its group has color k. Every group must be
/// monochromatic with color 1 or k; anything else is a malformed witness.
pub fn extract_assignment(
    coloring: &KColoring,
    trace: &ReductionTrace,
) -> Result<Vec<bool>, ReduceError> {
    if coloring.k() != trace.k {
        return Err(ReduceError::WrongPalette { got: coloring.k(), want: trace.k });
    }
    let k = trace.true_color;
    for (index, group) in trace.groups.iter().enumerate() {
        let first = coloring.color(group[0]);
        if first != 1 && first != k {
            return Err(ReduceError::MalformedWitness {
                group: index,
                describe: format!("color {first}"),
            });
        }
        if let Some(&odd) = group.iter().find(|&&v| coloring.color(v) != first) {
            return Err(ReduceError::MalformedWitness {
                group: index,
                describe: format!(
                    "vertices {} and {} differ",
                    group[0] + 1,
                    odd + 1
                ),
            });
        }
    }
    Ok((0..trace.num_vars)
        .map(|var| coloring.color(trace.groups[2 * var][0]) == k)
        .collect())
}

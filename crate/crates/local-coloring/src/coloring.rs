//! Colorings and the three validity predicates.
//!
//! A [`KColoring`] assigns every vertex a color in `1..=k`; colors need not
//! all be used. Three notions of validity apply:
//!
//! * **proper**: no edge is monochromatic;
//! * **local**: for every set `S` of 2 or 3 vertices, some pair in `S` has a
//!   color gap at least the number of edges inside `S` (so edges force
//!   distinct colors, 2-edge paths force a gap of 2 somewhere, and triangles
//!   force a gap of 3);
//! * **semi-matching**: proper, and the union of any two consecutive color
//!   classes induces a matching.
//!
//! The checkers here take the shortcuts that the definitions allow (pairs
//! reduce to properness, triples without at least two internal edges are
//! always fine); the test suite certifies them against a definition-literal
//! enumerator.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

/// Selects which validity predicate applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColoringMode {
    Proper,
    Local,
    SemiMatching,
}

impl ColoringMode {
    pub const ALL: [ColoringMode; 3] = [
        ColoringMode::Proper,
        ColoringMode::Local,
        ColoringMode::SemiMatching,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ColoringMode::Proper => "proper",
            ColoringMode::Local => "local",
            ColoringMode::SemiMatching => "semi-matching",
        }
    }
}

impl fmt::Display for ColoringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColoringMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proper" => Ok(ColoringMode::Proper),
            "local" => Ok(ColoringMode::Local),
            "semi-matching" => Ok(ColoringMode::SemiMatching),
            other => Err(format!(
                "unknown mode `{other}` (expected proper, local, or semi-matching)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: u32, k: u32 },
    #[error("coloring covers {colors} vertices but the graph has {vertices}")]
    SizeMismatch { vertices: usize, colors: usize },
    #[error("expected a vertex set of size 2 or 3, got {got} distinct vertices")]
    BadSetSize { got: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("coloring text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A total assignment of colors `1..=k` to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KColoring {
    k: u32,
    colors: Vec<u32>,
}

impl KColoring {
    pub fn new(k: u32, colors: Vec<u32>) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::InvalidK);
        }
        for (vertex, &color) in colors.iter().enumerate() {
            if color == 0 || color > k {
                return Err(ColoringError::ColorOutOfRange { vertex, color, k });
            }
        }
        Ok(Self { k, colors })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// The same assignment under the color reversal `c -> k + 1 - c`.
    pub fn reversed(&self) -> KColoring {
        KColoring {
            k: self.k,
            colors: self.colors.iter().map(|c| self.k + 1 - c).collect(),
        }
    }

    /// The same assignment viewed inside a palette of `k_new >= k` colors.
    pub fn widened(&self, k_new: u32) -> Result<KColoring, ColoringError> {
        if k_new < self.k {
            return Err(ColoringError::InvalidK);
        }
        Ok(KColoring {
            k: k_new,
            colors: self.colors.clone(),
        })
    }

    /// Renders the coloring text format: `s <k>`, then one
    /// `v <vertex> <color>` line per vertex, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = format!("s {}\n", self.k);
        for (v, c) in self.colors.iter().enumerate() {
            out.push_str(&format!("v {} {}\n", v + 1, c));
        }
        out
    }

    /// Parses the coloring text format. Every vertex from 1 to the largest
    /// mentioned index must appear exactly once.
    pub fn from_text(text: &str) -> Result<Self, ColoringError> {
        let mut k: Option<u32> = None;
        let mut entries: Vec<(usize, u32)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("s") => {
                    if k.is_some() {
                        return Err(ColoringError::Parse {
                            line: lineno,
                            msg: "duplicate `s` line".into(),
                        });
                    }
                    k = Some(tok.next().and_then(|t| t.parse().ok()).ok_or(
                        ColoringError::Parse {
                            line: lineno,
                            msg: "bad color count".into(),
                        },
                    )?);
                }
                Some("v") => {
                    let v: usize = tok.next().and_then(|t| t.parse().ok()).ok_or(
                        ColoringError::Parse {
                            line: lineno,
                            msg: "bad vertex".into(),
                        },
                    )?;
                    let c: u32 = tok.next().and_then(|t| t.parse().ok()).ok_or(
                        ColoringError::Parse {
                            line: lineno,
                            msg: "bad color".into(),
                        },
                    )?;
                    if v == 0 {
                        return Err(ColoringError::Parse {
                            line: lineno,
                            msg: "vertex indices are 1-based".into(),
                        });
                    }
                    entries.push((v - 1, c));
                }
                Some(other) => {
                    return Err(ColoringError::Parse {
                        line: lineno,
                        msg: format!("unknown line type `{other}`"),
                    });
                }
                None => unreachable!(),
            }
        }
        let k = k.ok_or(ColoringError::Parse {
            line: 0,
            msg: "missing `s <k>` line".into(),
        })?;
        let n = entries.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let mut colors = vec![0u32; n];
        for (v, c) in entries {
            if colors[v] != 0 {
                return Err(ColoringError::Parse {
                    line: 0,
                    msg: format!("vertex {} assigned twice", v + 1),
                });
            }
            colors[v] = c;
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::Parse {
                line: 0,
                msg: format!("vertex {} has no color", v + 1),
            });
        }
        KColoring::new(k, colors)
    }
}

/// The first constraint a coloring violates, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An edge whose endpoints share a color (violates every mode).
    MonochromaticEdge { u: usize, v: usize, color: u32 },
    /// A 3-vertex set whose internal edge count exceeds its largest color gap.
    TripleSpread {
        s: [usize; 3],
        edges: usize,
        max_gap: u32,
    },
    /// A vertex with two neighbors inside one union of consecutive classes.
    CrowdedUnion {
        vertex: usize,
        union: (u32, u32),
        neighbors: [usize; 2],
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MonochromaticEdge { u, v, color } => write!(
                f,
                "edge {}-{} is monochromatic (both endpoints have color {color})",
                u + 1,
                v + 1
            ),
            Violation::TripleSpread { s, edges, max_gap } => write!(
                f,
                "vertex set {{{}, {}, {}}} spans {edges} edges but its largest color gap is {max_gap}",
                s[0] + 1,
                s[1] + 1,
                s[2] + 1
            ),
            Violation::CrowdedUnion {
                vertex,
                union,
                neighbors,
            } => write!(
                f,
                "vertex {} has two neighbors ({} and {}) inside the union of classes {} and {}",
                vertex + 1,
                neighbors[0] + 1,
                neighbors[1] + 1,
                union.0,
                union.1
            ),
        }
    }
}

/// Number of graph edges with both endpoints in `s`, which must be a set of
/// 2 or 3 distinct vertices.
pub fn edges_within(g: &Graph, s: &[usize]) -> Result<usize, ColoringError> {
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != s.len() || !(2..=3).contains(&set.len()) {
        return Err(ColoringError::BadSetSize { got: set.len() });
    }
    for &v in &set {
        if v >= g.n() {
            return Err(ColoringError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let mut count = 0;
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if g.has_edge(set[i], set[j]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn check_sizes(g: &Graph, c: &KColoring) -> Result<(), ColoringError> {
    if g.n() != c.n() {
        return Err(ColoringError::SizeMismatch {
            vertices: g.n(),
            colors: c.n(),
        });
    }
    Ok(())
}

fn first_monochromatic_edge(g: &Graph, c: &KColoring) -> Option<Violation> {
    g.edges().find_map(|(u, v)| {
        (c.color(u) == c.color(v)).then(|| Violation::MonochromaticEdge {
            u,
            v,
            color: c.color(u),
        })
    })
}

fn gap(a: u32, b: u32) -> u32 {
    a.abs_diff(b)
}

/// Returns the first violated constraint of `mode`, or `None` if the
/// coloring is valid. The scan order is fixed, so the reported violation is
/// deterministic.
pub fn explain(g: &Graph, c: &KColoring, mode: ColoringMode) -> Result<Option<Violation>, ColoringError> {
    check_sizes(g, c)?;
    if let Some(v) = first_monochromatic_edge(g, c) {
        return Ok(Some(v));
    }
    match mode {
        ColoringMode::Proper => Ok(None),
        ColoringMode::Local => {
            // Every 3-set with at least two internal edges has a center
            // vertex adjacent to the other two; given properness, those are
            // the only sets that can still fail.
            for center in g.vertices() {
                let nbrs: Vec<usize> = g.neighbors(center).iter().copied().collect();
                for (i, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[i + 1..] {
                        let closing = g.has_edge(a, b);
                        if closing && center > a {
                            continue; // triangle already seen from its least vertex
                        }
                        let edges = if closing { 3 } else { 2 };
                        let max_gap = gap(c.color(a), c.color(b))
                            .max(gap(c.color(a), c.color(center)))
                            .max(gap(c.color(b), c.color(center)));
                        if max_gap < edges {
                            let mut s = [a, center, b];
                            s.sort_unstable();
                            return Ok(Some(Violation::TripleSpread {
                                s,
                                edges: edges as usize,
                                max_gap,
                            }));
                        }
                    }
                }
            }
            Ok(None)
        }
        ColoringMode::SemiMatching => {
            // Given properness, "every union of consecutive classes induces a
            // matching" says each vertex has at most one neighbor colored one
            // below it and at most one colored one above it.
            for v in g.vertices() {
                let cv = c.color(v);
                for delta in [-1i64, 1i64] {
                    let target = cv as i64 + delta;
                    if target < 1 {
                        continue;
                    }
                    let mut found: Option<usize> = None;
                    for &u in g.neighbors(v) {
                        if c.color(u) as i64 == target {
                            if let Some(first) = found {
                                let union = if delta < 0 { (cv - 1, cv) } else { (cv, cv + 1) };
                                return Ok(Some(Violation::CrowdedUnion {
                                    vertex: v,
                                    union,
                                    neighbors: [first, u],
                                }));
                            }
                            found = Some(u);
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

/// True iff no edge is monochromatic.
pub fn is_proper(g: &Graph, c: &KColoring) -> Result<bool, ColoringError> {
    Ok(explain(g, c, ColoringMode::Proper)?.is_none())
}

/// True iff every 2- or 3-vertex set contains a pair whose color gap is at
/// least the number of edges inside the set.
pub fn is_local(g: &Graph, c: &KColoring) -> Result<bool, ColoringError> {
    Ok(explain(g, c, ColoringMode::Local)?.is_none())
}

/// True iff the coloring is proper and every union of two consecutive color
/// classes induces a matching.
pub fn is_semi_matching(g: &Graph, c: &KColoring) -> Result<bool, ColoringError> {
    Ok(explain(g, c, ColoringMode::SemiMatching)?.is_none())
}

/// Dispatches to the predicate selected by `mode`.
pub fn validate(g: &Graph, c: &KColoring, mode: ColoringMode) -> Result<bool, ColoringError> {
    Ok(explain(g, c, mode)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{c_graph, complete_graph, cycle_graph, Graph};

    fn coloring(k: u32, colors: &[u32]) -> KColoring {
        KColoring::new(k, colors.to_vec()).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn edges_within_cases() {
        let k3 = complete_graph(3);
        assert_eq!(edges_within(&k3, &[0, 1, 2]).unwrap(), 3);
        let co_k2 = c_graph(2, 1).unwrap();
        assert_eq!(edges_within(&co_k2, &[0, 1]).unwrap(), 0);
        assert_eq!(edges_within(&path3(), &[0, 1, 2]).unwrap(), 2);
        assert!(matches!(
            edges_within(&k3, &[0]),
            Err(ColoringError::BadSetSize { got: 1 })
        ));
        assert!(matches!(
            edges_within(&k3, &[0, 0, 1]),
            Err(ColoringError::BadSetSize { .. })
        ));
    }

    #[test]
    fn proper_cases() {
        let k2 = complete_graph(2);
        assert!(is_proper(&k2, &coloring(2, &[1, 2])).unwrap());
        assert!(!is_proper(&k2, &coloring(2, &[1, 1])).unwrap());
        assert!(is_proper(&complete_graph(3), &coloring(3, &[1, 2, 3])).unwrap());
        assert!(matches!(
            is_proper(&k2, &coloring(2, &[1, 2, 1])),
            Err(ColoringError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn local_cases() {
        let k3 = complete_graph(3);
        // A triangle needs some pair three apart.
        assert!(is_local(&k3, &coloring(4, &[1, 2, 4])).unwrap());
        assert!(!is_local(&k3, &coloring(3, &[1, 2, 3])).unwrap());
        // A 2-edge path needs some pair two apart.
        assert!(!is_local(&path3(), &coloring(2, &[1, 2, 1])).unwrap());
        assert!(is_local(&path3(), &coloring(3, &[1, 2, 3])).unwrap());
        assert!(is_local(&path3(), &coloring(3, &[1, 3, 1])).unwrap());
    }

    #[test]
    fn semi_matching_cases() {
        let k3 = complete_graph(3);
        assert!(is_semi_matching(&k3, &coloring(3, &[1, 2, 3])).unwrap());
        assert!(!is_semi_matching(&path3(), &coloring(2, &[1, 2, 1])).unwrap());
        // On the 5-cycle, (1,3,1,3,2) works: the union of classes 1 and 2 and
        // the union of classes 2 and 3 each induce a single edge.
        let c5 = cycle_graph(5);
        assert!(is_semi_matching(&c5, &coloring(3, &[1, 3, 1, 3, 2])).unwrap());
        // (1,2,3,1,2) does not: vertex 5 has both neighbors colored 1.
        assert!(!is_semi_matching(&c5, &coloring(3, &[1, 2, 3, 1, 2])).unwrap());
        // No semi-matching 2-coloring of an odd cycle exists (not even proper).
        assert!(!is_semi_matching(&c5, &coloring(2, &[1, 2, 1, 2, 1])).unwrap());
    }

    #[test]
    fn validate_dispatches() {
        let k2 = complete_graph(2);
        assert!(validate(&k2, &coloring(2, &[1, 2]), ColoringMode::Proper).unwrap());
        assert!(validate(&complete_graph(3), &coloring(4, &[1, 2, 4]), ColoringMode::Local).unwrap());
        assert!(validate(
            &complete_graph(3),
            &coloring(3, &[1, 2, 3]),
            ColoringMode::SemiMatching
        )
        .unwrap());
    }

    #[test]
    fn explain_names_the_violation() {
        let k2 = complete_graph(2);
        assert_eq!(
            explain(&k2, &coloring(2, &[2, 2]), ColoringMode::Proper).unwrap(),
            Some(Violation::MonochromaticEdge { u: 0, v: 1, color: 2 })
        );
        let v = explain(&complete_graph(3), &coloring(3, &[1, 2, 3]), ColoringMode::Local)
            .unwrap()
            .unwrap();
        assert!(matches!(v, Violation::TripleSpread { edges: 3, max_gap: 2, .. }));
        let v = explain(&path3(), &coloring(3, &[1, 2, 1]), ColoringMode::SemiMatching)
            .unwrap()
            .unwrap();
        assert!(matches!(v, Violation::CrowdedUnion { vertex: 1, .. }));
    }

    #[test]
    fn coloring_text_round_trip() {
        let c = coloring(4, &[1, 2, 4]);
        let parsed = KColoring::from_text(&c.to_text()).unwrap();
        assert_eq!(parsed, c);
        assert!(KColoring::from_text("v 1 1\n").is_err());
        assert!(KColoring::from_text("s 3\nv 1 1\nv 3 2\n").is_err());
        assert!(KColoring::from_text("s 3\nv 1 5\n").is_err());
    }

    #[test]
    fn reversal_and_widening() {
        let c = coloring(4, &[1, 2, 4]);
        assert_eq!(c.reversed().colors(), &[4, 3, 1]);
        assert_eq!(c.widened(6).unwrap().k(), 6);
        assert!(c.widened(3).is_err());
    }
}

//! Finite simple undirected graphs and the construction primitives the
//! gadget builders are made of, plus a DIMACS-like text format.
//!
//! Vertices are `0..n`. Edges are stored both as a sorted set of normalized
//! pairs and as per-vertex neighbor sets; both views are derived from the
//! same edge set when a graph is built, so they cannot drift apart. A
//! [`Graph`] is immutable once built and safe to share across threads;
//! mutation happens only inside a [`GraphBuilder`] before it is frozen.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Errors raised by graph constructors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loops are not allowed (vertex {0})")]
    SelfLoop(usize),
    #[error("cannot remove {r} pairwise non-adjacent edges from a complete graph on {n} vertices (need n >= 2r)")]
    MatchingTooLarge { n: usize, r: usize },
}

/// Errors raised while reading the graph text format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `p edge <n> <m>` header line")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} edge lines were found")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// A finite simple undirected graph with optional vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    neighbors: Vec<BTreeSet<usize>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Iterator over `0..n`.
    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Whether `{u, v}` is an edge. Panics if either endpoint is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        u != v && self.neighbors[u].contains(&v)
    }

    /// The neighbor set of `v`.
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.neighbors[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges as normalized `(u, v)` pairs with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// The label attached to `v`, if any.
    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// All labels, keyed by vertex.
    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Convenience constructor from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.neighbors[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Renders the graph in the text format: a `p edge <n> <m>` header,
    /// `c label <v> <text>` lines for labeled vertices, then one
    /// `e <u> <v>` line per edge, all 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p edge {} {}\n", self.n, self.edges.len()));
        for (v, text) in &self.labels {
            out.push_str(&format!("c label {} {}\n", v + 1, text));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Parses the text format produced by [`Graph::to_dimacs`]. Comment lines
    /// other than `c label` are ignored; labels round-trip.
    pub fn from_dimacs(text: &str) -> Result<Self, GraphParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut builder: Option<GraphBuilder> = None;
        let mut edge_lines = 0usize;

        let err = |line: usize, msg: String| GraphParseError::Line { line, msg };

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(err(lineno, "duplicate header line".into()));
                    }
                    if tokens.next() != Some("edge") {
                        return Err(err(lineno, "expected `p edge <n> <m>`".into()));
                    }
                    let n: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(lineno, "bad vertex count".into()))?;
                    let m: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(lineno, "bad edge count".into()))?;
                    header = Some((n, m));
                    builder = Some(GraphBuilder::new(n));
                }
                Some("c") => {
                    let rest: Vec<&str> = line.splitn(4, char::is_whitespace).collect();
                    if rest.get(1) == Some(&"label") {
                        let b = builder
                            .as_mut()
                            .ok_or_else(|| err(lineno, "label before header".into()))?;
                        let v: usize = rest
                            .get(2)
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err(lineno, "bad label vertex".into()))?;
                        let text = rest
                            .get(3)
                            .ok_or_else(|| err(lineno, "missing label text".into()))?;
                        if v == 0 || v > b.n {
                            return Err(err(lineno, format!("label vertex {v} out of range")));
                        }
                        b.set_label(v - 1, (*text).to_string());
                    }
                    // other comment lines are ignored
                }
                Some("e") => {
                    let b = builder
                        .as_mut()
                        .ok_or_else(|| err(lineno, "edge before header".into()))?;
                    let u: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(lineno, "bad edge endpoint".into()))?;
                    let v: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(lineno, "bad edge endpoint".into()))?;
                    if tokens.next().is_some() {
                        return Err(err(lineno, "trailing tokens on edge line".into()));
                    }
                    if u == 0 || v == 0 || u > b.n || v > b.n {
                        return Err(err(lineno, format!("edge {u}-{v} out of range")));
                    }
                    if u == v {
                        return Err(err(lineno, format!("self-loop at vertex {u}")));
                    }
                    let (a, b2) = (u - 1, v - 1);
                    if b.edges.contains(&(a.min(b2), a.max(b2))) {
                        return Err(err(lineno, format!("duplicate edge {u}-{v}")));
                    }
                    b.add_edge(a, b2)
                        .map_err(|e| err(lineno, e.to_string()))?;
                    edge_lines += 1;
                }
                Some(other) => {
                    return Err(err(lineno, format!("unknown line type `{other}`")));
                }
                None => unreachable!(),
            }
        }

        let (_, m) = header.ok_or(GraphParseError::MissingHeader)?;
        if m != edge_lines {
            return Err(GraphParseError::EdgeCountMismatch {
                declared: m,
                found: edge_lines,
            });
        }
        Ok(builder.unwrap().build())
    }
}

/// Incrementally builds a [`Graph`]; single-owner until [`GraphBuilder::build`]
/// freezes it.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
            labels: BTreeMap::new(),
        }
    }

    /// Starts from an existing graph, so vertices and edges can be added.
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            n: g.n,
            edges: g.edges.clone(),
            labels: g.labels.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds the edge `{u, v}`. Re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn set_label(&mut self, v: usize, label: String) {
        self.labels.insert(v, label);
    }

    /// Appends a disjoint copy of `g`, returning the vertex offset of the copy.
    /// Labels are carried over at their offset positions.
    pub fn append(&mut self, g: &Graph) -> usize {
        let offset = self.n;
        self.n += g.n();
        for (u, v) in g.edges() {
            self.edges.insert((offset + u, offset + v));
        }
        for (v, text) in g.labels() {
            self.labels.insert(offset + v, text.clone());
        }
        offset
    }

    pub fn build(self) -> Graph {
        let mut neighbors = vec![BTreeSet::new(); self.n];
        for &(u, v) in &self.edges {
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        Graph {
            n: self.n,
            edges: self.edges,
            neighbors,
            labels: self.labels,
        }
    }
}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            b.add_edge(u, v).expect("in range");
        }
    }
    b.build()
}

/// The complete graph on `n` vertices minus `r` pairwise non-adjacent edges.
///
/// The removed matching is fixed to `(0,1), (2,3), ..., (2r-2, 2r-1)` so the
/// result is deterministic; any other matching gives an isomorphic graph.
pub fn c_graph(n: usize, r: usize) -> Result<Graph, GraphError> {
    if n < 2 * r {
        return Err(GraphError::MatchingTooLarge { n, r });
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let removed = v == u + 1 && u.is_multiple_of(2) && v < 2 * r;
            if !removed {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    Ok(b.build())
}

/// The cycle on `n` vertices (`n >= 3`); smaller `n` gives a path or a point.
pub fn cycle_graph(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    if n >= 2 {
        for v in 0..n - 1 {
            b.add_edge(v, v + 1).expect("in range");
        }
        if n >= 3 {
            b.add_edge(n - 1, 0).expect("in range");
        }
    }
    b.build()
}

/// Disjoint union of the given graphs. Returns the union and the vertex
/// offset of each part, for port tracking.
pub fn disjoint_union(parts: &[Graph]) -> (Graph, Vec<usize>) {
    let mut b = GraphBuilder::new(0);
    let mut offsets = Vec::with_capacity(parts.len());
    for g in parts {
        offsets.push(b.append(g));
    }
    (b.build(), offsets)
}

/// Adds one new vertex joined to exactly `targets`, returning the new graph
/// and the id of the added vertex.
pub fn add_vertex_joined(g: &Graph, targets: &[usize]) -> Result<(Graph, usize), GraphError> {
    for &t in targets {
        if t >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: t, n: g.n() });
        }
    }
    let mut b = GraphBuilder::from_graph(g);
    let new = b.add_vertex();
    for &t in targets {
        b.add_edge(t, new)?;
    }
    Ok((b.build(), new))
}

/// Induced subgraph on the complement of `removed`, with vertices re-indexed
/// consecutively in their original order.
pub fn remove_vertices(g: &Graph, removed: &[usize]) -> Result<Graph, GraphError> {
    for &v in removed {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let removed: BTreeSet<usize> = removed.iter().copied().collect();
    let mut new_index = vec![usize::MAX; g.n()];
    let mut kept = 0;
    for (v, slot) in new_index.iter_mut().enumerate() {
        if !removed.contains(&v) {
            *slot = kept;
            kept += 1;
        }
    }
    let mut b = GraphBuilder::new(kept);
    for (u, v) in g.edges() {
        if !removed.contains(&u) && !removed.contains(&v) {
            b.add_edge(new_index[u], new_index[v]).expect("in range");
        }
    }
    for (v, text) in g.labels() {
        if !removed.contains(v) {
            b.set_label(new_index[*v], text.clone());
        }
    }
    Ok(b.build())
}

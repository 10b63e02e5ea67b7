//! Exact solvers, gadget constructions, and machine-checked reductions for
//! local and semi-matching graph colorings.
//!
//! A *local* k-coloring asks every 2- or 3-vertex set to contain a pair of
//! colors at least as far apart as the number of edges inside the set; a
//! *semi-matching* coloring asks every union of two consecutive color
//! classes to induce a matching. This crate provides:
//!
//! * [`graph`]: immutable simple graphs, the construction primitives the
//!   gadgets are built from, and a DIMACS-like text format;
//! * [`coloring`]: the three validity predicates with first-violation
//!   diagnostics;
//! * [`solver`]: exact backtracking search, group-constrained solving, and
//!   chromatic numbers, with node budgets and deterministic witnesses;
//! * [`gadgets`]: the clause gadget with its extendability table and
//!   explicit extension colorings, plus certified equal-chromatic-numbers
//!   witnesses and their cache;
//! * [`reduction`]: the NAE 3-SAT front end, the two-stage reduction to
//!   coloring, and solution lifting in both directions;
//! * [`verify`]: seeded batch suites shared by the CLI and the test
//!   harness.
//!
//! The companion guide under `book/` walks through the concepts; its code
//! snippets are compiled as doctests by the `guide` crate.

pub mod coloring;
pub mod gadgets;
pub mod graph;
pub mod reduction;
pub mod solver;
pub mod verify;

pub use coloring::{
    edges_within, explain, is_local, is_proper, is_semi_matching, validate, ColoringError,
    ColoringMode, KColoring, Violation,
};
pub use gadgets::{
    equality_compose, equality_compose_with, extend_gadget_coloring, extendable_port_patterns,
    gamma_graph, gamma_search, gamma_triple, l_graph, load_or_search_gamma, nae_gadget,
    pattern_is_extendable, read_gamma_cache, write_gamma_cache, GadgetError, GammaCertificate,
    GammaSearchOptions, GammaWitness, PortPattern, PortedGadget,
};
pub use graph::{
    add_vertex_joined, c_graph, complete_graph, cycle_graph, disjoint_union, remove_vertices,
    Graph, GraphBuilder, GraphError, GraphParseError,
};
pub use reduction::{
    brute_force_nae, extract_assignment, is_nae_satisfying, lift_assignment, parse_nae,
    reduce_full, reduce_full_with, reduce_to_constrained, Lit, NaeInstance, NaeParseError,
    ReduceError, ReductionTrace,
};
pub use solver::{
    chromatic_number, chromatic_number_with_stats, find_coloring, find_coloring_with_stats,
    solve_constrained, solve_constrained_oracle, solve_constrained_with_stats,
    ConstrainedInstance, SearchStats, SolverConfig, SolverError, DEFAULT_NODE_BUDGET,
};

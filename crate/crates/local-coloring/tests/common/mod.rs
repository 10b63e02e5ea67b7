//! Definition-literal oracles, independent of the optimized library paths.
//! These enumerate everything the definitions quantify over and are used to
//! certify the shipped validators and the solver.
#![allow(dead_code)]

use std::collections::BTreeMap;

use local_coloring::{
    edges_within, ColoringMode, Graph, KColoring, SolverConfig,
};

/// Definition-literal proper check: every color class is an independent set.
pub fn naive_is_proper(g: &Graph, c: &KColoring) -> bool {
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for v in g.vertices() {
        classes.entry(c.color(v)).or_default().push(v);
    }
    classes.values().all(|class| {
        class
            .iter()
            .enumerate()
            .all(|(i, &u)| class[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
    })
}

/// Definition-literal local check: enumerates every vertex set of size 2 and
/// size 3 (adjacent or not) and asks for a pair at least `edges_within`
/// apart.
pub fn naive_is_local(g: &Graph, c: &KColoring) -> bool {
    let n = g.n();
    for u in 0..n {
        for v in (u + 1)..n {
            let e = edges_within(g, &[u, v]).unwrap() as u32;
            if c.color(u).abs_diff(c.color(v)) < e {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for d in (b + 1)..n {
                let e = edges_within(g, &[a, b, d]).unwrap() as u32;
                let spread = c.color(a).abs_diff(c.color(b))
                    .max(c.color(a).abs_diff(c.color(d)))
                    .max(c.color(b).abs_diff(c.color(d)));
                if spread < e {
                    return false;
                }
            }
        }
    }
    true
}

/// Definition-literal semi-matching check: builds each union of consecutive
/// color classes and verifies the induced subgraph has maximum degree one.
pub fn naive_is_semi_matching(g: &Graph, c: &KColoring) -> bool {
    if !naive_is_proper(g, c) {
        return false;
    }
    for i in 1..c.k() {
        let members: Vec<usize> = g
            .vertices()
            .filter(|&v| c.color(v) == i || c.color(v) == i + 1)
            .collect();
        for &v in &members {
            let degree = members
                .iter()
                .filter(|&&u| u != v && g.has_edge(u, v))
                .count();
            if degree > 1 {
                return false;
            }
        }
    }
    true
}

pub fn naive_validate(g: &Graph, c: &KColoring, mode: ColoringMode) -> bool {
    match mode {
        ColoringMode::Proper => naive_is_proper(g, c),
        ColoringMode::Local => naive_is_local(g, c),
        ColoringMode::SemiMatching => naive_is_semi_matching(g, c),
    }
}

/// Decision-only enumeration: whether any of the `k^n` assignments passes
/// the naive validator.
pub fn enumeration_has_valid(g: &Graph, cfg: &SolverConfig) -> bool {
    enumeration_first_valid(g, cfg).is_some()
}

/// Enumerates all `k^n` assignments in lexicographic order (vertex 0 most
/// significant, colors ascending) and returns the first one the naive
/// validator accepts.
pub fn enumeration_first_valid(g: &Graph, cfg: &SolverConfig) -> Option<KColoring> {
    let n = g.n();
    let k = cfg.k;
    let mut colors = vec![1u32; n];
    loop {
        let candidate = KColoring::new(k, colors.clone()).expect("colors in range");
        if naive_validate(g, &candidate, cfg.mode) {
            return Some(candidate);
        }
        // Increment the color vector as a base-k counter, last vertex fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if colors[pos] < k {
                colors[pos] += 1;
                colors[pos + 1..].fill(1);
                break;
            }
        }
        if n == 0 {
            return None;
        }
    }
}

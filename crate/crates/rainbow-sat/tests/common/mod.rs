//! Naive reference implementations shared by the integration suites.
// Each test binary uses a subset of these helpers.
#![allow(dead_code)]

use rainbow_sat::{ColoredGraph, Pattern};

/// Exhaustive injective-map search for a rainbow copy; no pruning beyond
/// injectivity.
pub fn naive_find_rainbow(host: &ColoredGraph, pat: &Pattern) -> Option<Vec<usize>> {
    fn go(
        host: &ColoredGraph,
        pat: &Pattern,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = map.len();
        if k == pat.n() {
            let mut colors = std::collections::HashSet::new();
            return pat.edges().iter().all(|&(a, b)| {
                host.color_of(map[a], map[b])
                    .is_some_and(|c| colors.insert(c))
            });
        }
        for hv in 0..host.n() {
            if used[hv] {
                continue;
            }
            map.push(hv);
            used[hv] = true;
            if go(host, pat, map, used) {
                return true;
            }
            used[hv] = false;
            map.pop();
        }
        false
    }
    let mut map = Vec::new();
    let mut used = vec![false; host.n()];
    if go(host, pat, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Naive version of `creates_rainbow`: add the edge to a clone and look for
/// a rainbow copy whose image uses it.
pub fn naive_creates_rainbow(
    host: &ColoredGraph,
    u: usize,
    v: usize,
    c: u32,
    pat: &Pattern,
) -> bool {
    let mut g = host.clone();
    g.add_edge(u, v, c).expect("non-edge");
    fn go(
        host: &ColoredGraph,
        pat: &Pattern,
        through: (usize, usize),
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = map.len();
        if k == pat.n() {
            let mut colors = std::collections::HashSet::new();
            let all_edges = pat.edges().iter().all(|&(a, b)| {
                host.color_of(map[a], map[b])
                    .is_some_and(|cc| colors.insert(cc))
            });
            let uses = pat.edges().iter().any(|&(a, b)| {
                (map[a], map[b]) == through || (map[b], map[a]) == through
            });
            return all_edges && uses;
        }
        for hv in 0..host.n() {
            if used[hv] {
                continue;
            }
            map.push(hv);
            used[hv] = true;
            if go(host, pat, through, map, used) {
                return true;
            }
            used[hv] = false;
            map.pop();
        }
        false
    }
    let mut map = Vec::new();
    let mut used = vec![false; g.n()];
    go(&g, pat, (u, v), &mut map, &mut used)
}

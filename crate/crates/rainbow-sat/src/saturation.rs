//! Saturation verification, closure, and the exact small-instance oracle.

use thiserror::Error;

use crate::embed::{creates_copy, creates_rainbow, find_copy, find_rainbow_copy};
use crate::graph::{ColoredGraph, Pattern};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("palette t={t} smaller than e(H)={m}")]
    PaletteTooSmall { t: u32, m: usize },
    #[error("input graph already contains a rainbow copy")]
    NotRainbowFree,
    #[error("instance (n={n}, t={t}, |H|={h}) exceeds the feasibility gate; pass force to override")]
    TooLarge { n: usize, t: u32, h: usize },
}

/// Verdict object for the saturation property.
#[derive(Debug, Clone, PartialEq)]
pub struct SaturationCertificate {
    pub rainbow_free: bool,
    /// `(non-edge, colour)` pairs whose addition creates no rainbow copy.
    pub unsaturated: Vec<((usize, usize), u32)>,
    pub edge_count: usize,
    /// Theorem bound supplied by the caller, if any.
    pub bound: Option<f64>,
}

impl SaturationCertificate {
    pub fn is_saturated(&self) -> bool {
        self.rainbow_free && self.unsaturated.is_empty()
    }
}

/// Checks rainbow-freeness and, for every (non-edge, colour) pair, whether
/// the addition creates a rainbow copy of `pat`.
pub fn verify_saturated(
    g: &ColoredGraph,
    pat: &Pattern,
) -> Result<SaturationCertificate, SatError> {
    if (g.t() as usize) < pat.edge_count() {
        return Err(SatError::PaletteTooSmall {
            t: g.t(),
            m: pat.edge_count(),
        });
    }
    let rainbow_free = find_rainbow_copy(g, pat).is_none();
    let mut unsaturated = Vec::new();
    for (u, v) in g.non_edges() {
        for c in 1..=g.t() {
            if !creates_rainbow(g, u, v, c, pat).expect("non-edge") {
                unsaturated.push(((u, v), c));
            }
        }
    }
    Ok(SaturationCertificate {
        rainbow_free,
        unsaturated,
        edge_count: g.edge_count(),
        bound: None,
    })
}

/// Completes a rainbow-free graph into a saturated one by scanning
/// non-edges lexicographically and inserting each unsaturated one with the
/// smallest safe colour, until a full pass adds nothing.
pub fn saturation_closure(g: &ColoredGraph, pat: &Pattern) -> Result<ColoredGraph, SatError> {
    if find_rainbow_copy(g, pat).is_some() {
        return Err(SatError::NotRainbowFree);
    }
    let mut g = g.clone();
    loop {
        let mut added = false;
        for (u, v) in g.non_edges() {
            // smallest colour whose addition creates no rainbow copy; such a
            // colour exists exactly when the pair is still unsaturated
            let safe = (1..=g.t())
                .find(|&c| !creates_rainbow(&g, u, v, c, pat).expect("non-edge"));
            if let Some(c) = safe {
                g.add_edge(u, v, c).expect("non-edge insertion");
                added = true;
            }
        }
        if !added {
            return Ok(g);
        }
    }
}

fn gate_ok(n: usize, t: u32, pat: &Pattern) -> bool {
    n <= 6 && t <= 4 && pat.n() <= 5
}

fn is_saturated_fast(g: &ColoredGraph, pat: &Pattern) -> bool {
    for (u, v) in g.non_edges() {
        for c in 1..=g.t() {
            if !creates_rainbow(g, u, v, c, pat).expect("non-edge") {
                return false;
            }
        }
    }
    find_rainbow_copy(g, pat).is_none()
}

/// Exact minimum edge count over all t-coloured graphs on `n` labelled
/// vertices that are rainbow-`pat`-saturated, with a witness.
///
/// Enumerates edge subsets by increasing cardinality and colourings up to
/// colour permutation (first-occurrence canonical form); returns at the
/// first cardinality admitting a saturated colouring.
pub fn exact_sat(
    n: usize,
    t: u32,
    pat: &Pattern,
    force: bool,
) -> Result<(usize, ColoredGraph), SatError> {
    if !force && !gate_ok(n, t, pat) {
        return Err(SatError::TooLarge { n, t, h: pat.n() });
    }
    if (t as usize) < pat.edge_count() {
        return Err(SatError::PaletteTooSmall {
            t,
            m: pat.edge_count(),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for k in 0..=pairs.len() {
        let mut subset = Vec::with_capacity(k);
        if let Some(w) = search_subsets(n, t, pat, &pairs, k, 0, &mut subset) {
            return Ok((k, w));
        }
    }
    unreachable!("a saturated graph always exists for t >= e(H)");
}

fn search_subsets(
    n: usize,
    t: u32,
    pat: &Pattern,
    pairs: &[(usize, usize)],
    k: usize,
    start: usize,
    subset: &mut Vec<(usize, usize)>,
) -> Option<ColoredGraph> {
    if subset.len() == k {
        return search_colorings(n, t, pat, subset, &mut Vec::new());
    }
    let remaining = k - subset.len();
    for i in start..=pairs.len().saturating_sub(remaining) {
        subset.push(pairs[i]);
        if let Some(w) = search_subsets(n, t, pat, pairs, k, i + 1, subset) {
            return Some(w);
        }
        subset.pop();
    }
    None
}

fn search_colorings(
    n: usize,
    t: u32,
    pat: &Pattern,
    subset: &[(usize, usize)],
    colors: &mut Vec<u32>,
) -> Option<ColoredGraph> {
    if colors.len() == subset.len() {
        let mut g = ColoredGraph::new(n, t);
        for (&(u, v), &c) in subset.iter().zip(colors.iter()) {
            g.add_edge(u, v, c).unwrap();
        }
        return if is_saturated_fast(&g, pat) {
            Some(g)
        } else {
            None
        };
    }
    // canonical up to colour permutation: the next edge may reuse any colour
    // seen so far or introduce the next fresh one
    let max_so_far = colors.iter().copied().max().unwrap_or(0);
    let limit = (max_so_far + 1).min(t);
    for c in 1..=limit {
        colors.push(c);
        if let Some(w) = search_colorings(n, t, pat, subset, colors) {
            return Some(w);
        }
        colors.pop();
    }
    None
}

/// Classical (uncoloured) saturation oracle: minimum edges in an H-free
/// graph on `n` labelled vertices where adding any non-edge creates a copy
/// of H. Cross-check against the Erdős–Hajnal–Moon formula for cliques.
pub fn exact_sat_uncolored(n: usize, pat: &Pattern, force: bool) -> Result<usize, SatError> {
    if !force && !(n <= 6 && pat.n() <= 5) {
        return Err(SatError::TooLarge { n, t: 1, h: pat.n() });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = pairs.len();
    for k in 0..=total {
        for mask in 0u32..(1 << total) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut g = ColoredGraph::new(n, 1);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v, 1).unwrap();
                }
            }
            if find_copy(&g, pat).is_some() {
                continue;
            }
            let saturated = g
                .non_edges()
                .iter()
                .all(|&(u, v)| creates_copy(&g, u, v, pat).expect("non-edge"));
            if saturated {
                return Ok(k);
            }
        }
    }
    unreachable!("a saturated graph always exists");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Pattern {
        Pattern::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn mono_kn(n: usize, t: u32) -> ColoredGraph {
        let mut g = ColoredGraph::new(n, t);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, 1).unwrap();
            }
        }
        g
    }

    #[test]
    fn monochromatic_complete_is_saturated() {
        let g = mono_kn(5, 3);
        let cert = verify_saturated(&g, &k3()).unwrap();
        assert!(cert.rainbow_free);
        assert!(cert.unsaturated.is_empty());
        assert_eq!(cert.edge_count, 10);
    }

    #[test]
    fn empty_graph_fully_unsaturated() {
        let g = ColoredGraph::new(4, 3);
        let cert = verify_saturated(&g, &k3()).unwrap();
        assert!(cert.rainbow_free);
        assert_eq!(cert.unsaturated.len(), 18);
    }

    #[test]
    fn palette_gate() {
        let g = ColoredGraph::new(4, 2);
        assert_eq!(
            verify_saturated(&g, &k3()),
            Err(SatError::PaletteTooSmall { t: 2, m: 3 })
        );
    }

    #[test]
    fn closure_fixed_point() {
        let g = mono_kn(4, 3);
        let closed = saturation_closure(&g, &k3()).unwrap();
        assert_eq!(closed, g);
    }

    #[test]
    fn closure_rejects_rainbow_host() {
        let mut g = ColoredGraph::new(3, 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(0, 2, 2).unwrap();
        g.add_edge(1, 2, 3).unwrap();
        assert_eq!(saturation_closure(&g, &k3()), Err(SatError::NotRainbowFree));
    }

    #[test]
    fn closure_then_verify() {
        // 2 isolated vertices plus a rainbow path of length 2
        let mut g = ColoredGraph::new(5, 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        let closed = saturation_closure(&g, &k3()).unwrap();
        let cert = verify_saturated(&closed, &k3()).unwrap();
        assert!(cert.is_saturated());
    }

    #[test]
    fn exact_sat_tiny_triangle() {
        let (v, w) = exact_sat(3, 3, &k3(), false).unwrap();
        assert_eq!(v, 3);
        assert!(verify_saturated(&w, &k3()).unwrap().is_saturated());
    }

    #[test]
    fn feasibility_gate() {
        assert!(matches!(
            exact_sat(10, 3, &k3(), false),
            Err(SatError::TooLarge { .. })
        ));
    }
}

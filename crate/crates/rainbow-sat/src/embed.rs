//! Rainbow copy detection: backtracking subgraph embedding with a
//! used-colour mask.

use thiserror::Error;

use crate::graph::{ColoredGraph, Pattern};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("{{{0},{1}}} is an edge, not a non-edge")]
    NotANonEdge(usize, usize),
}

/// Injective vertex map witnessing a rainbow copy of a pattern in a host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `map[p]` is the host image of pattern vertex `p`.
    pub map: Vec<usize>,
}

impl Embedding {
    /// Independent soundness check: injectivity, edge preservation,
    /// pairwise-distinct colours on pattern-edge images.
    pub fn check(&self, host: &ColoredGraph, pat: &Pattern) -> bool {
        if self.map.len() != pat.n() {
            return false;
        }
        let mut seen_host = std::collections::HashSet::new();
        if !self.map.iter().all(|&v| seen_host.insert(v)) {
            return false;
        }
        let mut colors = std::collections::HashSet::new();
        for &(a, b) in pat.edges() {
            match host.color_of(self.map[a], self.map[b]) {
                Some(c) => {
                    if !colors.insert(c) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }
}

/// Host adjacency with at most one virtual extra edge overlaid, so the
/// incremental query never has to copy the graph.
struct HostView<'a> {
    g: &'a ColoredGraph,
    extra: Option<(usize, usize, u32)>,
}

impl HostView<'_> {
    #[inline]
    fn color_of(&self, u: usize, v: usize) -> Option<u32> {
        if let Some((a, b, c)) = self.extra {
            if (u == a && v == b) || (u == b && v == a) {
                return Some(c);
            }
        }
        self.g.color_of(u, v)
    }

    fn degree(&self, v: usize) -> usize {
        let base = self.g.degree(v);
        match self.extra {
            Some((a, b, _)) if v == a || v == b => base + 1,
            _ => base,
        }
    }
}

struct Searcher<'a> {
    host: HostView<'a>,
    pat: &'a Pattern,
    order: Vec<usize>,
    /// Pattern vertex -> host vertex (usize::MAX when unmapped).
    map: Vec<usize>,
    used_host: Vec<bool>,
    used_color: Vec<bool>,
    /// When false, colour distinctness is ignored (plain subgraph search).
    rainbow: bool,
}

impl<'a> Searcher<'a> {
    fn new(host: HostView<'a>, pat: &'a Pattern, rainbow: bool) -> Self {
        let t = host.g.t() as usize;
        let hn = host.g.n();
        Searcher {
            host,
            pat,
            order: Vec::new(),
            map: vec![usize::MAX; pat.n()],
            used_host: vec![false; hn],
            used_color: vec![false; t + 1],
            rainbow,
        }
    }

    /// Greedy search order: highest degree first, then prefer vertices with
    /// the most already-ordered neighbours. Pre-seeded anchors are skipped.
    fn build_order(&mut self, anchors: &[usize]) {
        let n = self.pat.n();
        let mut chosen = vec![false; n];
        for &a in anchors {
            chosen[a] = true;
        }
        self.order.clear();
        while self.order.len() + anchors.len() < n {
            let best = (0..n)
                .filter(|&v| !chosen[v])
                .max_by_key(|&v| {
                    let back = self.pat.neighbors(v).filter(|&w| chosen[w]).count();
                    (back, self.pat.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            chosen[best] = true;
            self.order.push(best);
        }
    }

    /// Tries to map pattern vertex `pv` onto host vertex `hv`, updating the
    /// colour mask. Returns the colours claimed, or None on conflict.
    fn try_assign(&mut self, pv: usize, hv: usize) -> Option<Vec<u32>> {
        let mut claimed = Vec::new();
        for w in 0..self.pat.n() {
            if self.map[w] == usize::MAX || !self.pat.has_edge(pv, w) {
                continue;
            }
            match self.host.color_of(hv, self.map[w]) {
                Some(c) => {
                    if self.rainbow {
                        if self.used_color[c as usize] {
                            for &cc in &claimed {
                                self.used_color[cc as usize] = false;
                            }
                            return None;
                        }
                        self.used_color[c as usize] = true;
                        claimed.push(c);
                    }
                }
                None => {
                    for &cc in &claimed {
                        self.used_color[cc as usize] = false;
                    }
                    return None;
                }
            }
        }
        Some(claimed)
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        // candidates: host neighbours of some already-mapped pattern
        // neighbour, else every unused host vertex
        let pivot = self
            .pat
            .neighbors(pv)
            .find(|&w| self.map[w] != usize::MAX)
            .map(|w| self.map[w]);
        let pdeg = self.pat.degree(pv);
        let cands: Vec<usize> = match pivot {
            Some(h) => {
                let mut v: Vec<usize> = self.host.g.neighbors(h).collect();
                if let Some((a, b, _)) = self.host.extra {
                    if h == a && !v.contains(&b) {
                        v.push(b);
                    }
                    if h == b && !v.contains(&a) {
                        v.push(a);
                    }
                }
                v
            }
            None => (0..host_n(&self.host)).collect(),
        };
        for hv in cands {
            if self.used_host[hv] || self.host.degree(hv) < pdeg {
                continue;
            }
            if let Some(claimed) = self.try_assign(pv, hv) {
                self.map[pv] = hv;
                self.used_host[hv] = true;
                if self.search(depth + 1) {
                    return true;
                }
                self.used_host[hv] = false;
                self.map[pv] = usize::MAX;
                for c in claimed {
                    self.used_color[c as usize] = false;
                }
            }
        }
        false
    }
}

fn host_n(h: &HostView<'_>) -> usize {
    h.g.n()
}

/// Finds one rainbow copy of `pat` in `host`, or `None`.
///
/// Panics if the pattern has no edges; degenerate patterns are rejected at
/// the API boundary.
pub fn find_rainbow_copy(host: &ColoredGraph, pat: &Pattern) -> Option<Embedding> {
    assert!(pat.edge_count() >= 1, "pattern must have at least one edge");
    let mut s = Searcher::new(HostView { g: host, extra: None }, pat, true);
    s.build_order(&[]);
    if s.search(0) {
        Some(Embedding { map: s.map })
    } else {
        None
    }
}

/// Plain (colour-blind) subgraph copy, used by the uncoloured saturation
/// oracle.
pub fn find_copy(host: &ColoredGraph, pat: &Pattern) -> Option<Embedding> {
    assert!(pat.edge_count() >= 1, "pattern must have at least one edge");
    let mut s = Searcher::new(HostView { g: host, extra: None }, pat, false);
    s.build_order(&[]);
    if s.search(0) {
        Some(Embedding { map: s.map })
    } else {
        None
    }
}

fn creates_copy_impl(
    host: &ColoredGraph,
    u: usize,
    v: usize,
    c: u32,
    pat: &Pattern,
    rainbow: bool,
) -> Result<bool, EmbedError> {
    assert!(pat.edge_count() >= 1, "pattern must have at least one edge");
    if host.has_edge(u, v) {
        return Err(EmbedError::NotANonEdge(u.min(v), u.max(v)));
    }
    let view = HostView {
        g: host,
        extra: Some((u, v, c)),
    };
    for &(a, b) in pat.edges() {
        for (pa, pb) in [(a, b), (b, a)] {
            if pat.degree(pa) > view.degree(u) || pat.degree(pb) > view.degree(v) {
                continue;
            }
            let mut s = Searcher::new(
                HostView {
                    g: host,
                    extra: Some((u, v, c)),
                },
                pat,
                rainbow,
            );
            s.map[pa] = u;
            s.map[pb] = v;
            s.used_host[u] = true;
            s.used_host[v] = true;
            if rainbow {
                s.used_color[c as usize] = true;
            }
            s.build_order(&[pa, pb]);
            if s.search(0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// True iff adding `{u,v}` in colour `c` creates a rainbow copy of `pat`
/// whose edge set includes `{u,v}`.
pub fn creates_rainbow(
    host: &ColoredGraph,
    u: usize,
    v: usize,
    c: u32,
    pat: &Pattern,
) -> Result<bool, EmbedError> {
    creates_copy_impl(host, u, v, c, pat, true)
}

/// Colour-blind variant of [`creates_rainbow`].
pub fn creates_copy(
    host: &ColoredGraph,
    u: usize,
    v: usize,
    pat: &Pattern,
) -> Result<bool, EmbedError> {
    creates_copy_impl(host, u, v, 1, pat, false)
}

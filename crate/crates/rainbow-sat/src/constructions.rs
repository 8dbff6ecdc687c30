//! Generators for rainbow-saturated coloured graphs. Each generator
//! returns the graph plus the theorem edge bound it targets; randomized
//! generators are gated by a deterministic post-check with seeded retries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::designs::{one_factorization, steiner_triple_system, DesignError};
use crate::embed::{creates_rainbow, find_rainbow_copy};
use crate::families::clique;
use crate::graph::{isomorphic, ColoredGraph, Pattern};
use crate::saturation::saturation_closure;
use crate::structure::{find_special_edge, SpecialEdge};

const MAX_RETRIES: u32 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("pattern has no non-pendant edge outside triangles")]
    NoQualifyingEdge,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("order {0} must be even and at least 4")]
    BadOrder(u32),
    #[error("pattern is not a disjoint union of at least two stars")]
    NotAStarForest,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("randomized construction failed {MAX_RETRIES} deterministic post-checks")]
    RetriesExhausted,
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("internal: construction was not rainbow-free before closure")]
    NotRainbowFree,
}

#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub name: String,
    pub graph: ColoredGraph,
    /// Vertices whose internal non-edges the theorem proves saturated
    /// before closure.
    pub protected: Vec<usize>,
    pub declared_bound: f64,
    pub seed: Option<u64>,
    pub retries: u32,
    /// Extra construction parameters for the metadata sidecar.
    pub meta: Vec<(String, String)>,
}

impl ConstructionOutput {
    /// Line-oriented key=value sidecar.
    pub fn metadata_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("construction={}\n", self.name));
        s.push_str(&format!("n={}\n", self.graph.n()));
        s.push_str(&format!("t={}\n", self.graph.t()));
        if let Some(seed) = self.seed {
            s.push_str(&format!("seed={seed}\n"));
        }
        s.push_str(&format!("retries={}\n", self.retries));
        s.push_str(&format!("declared_bound={}\n", self.declared_bound));
        s.push_str(&format!("edges={}\n", self.graph.edge_count()));
        for (k, v) in &self.meta {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }
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

fn close(g: ColoredGraph, h: &Pattern) -> Result<ColoredGraph, ConstructError> {
    saturation_closure(&g, h).map_err(|_| ConstructError::NotRainbowFree)
}

/// Enumeration of H's edges and vertices around the special edge e = xy:
/// vertices other than x, y in ascending order (these survive into the
/// copies), edges with e last.
struct SpecialEnumeration {
    /// Pattern vertices of H \ {x,y} in copy-local order.
    others: Vec<usize>,
    /// All edges of H, the special edge last; `index_of[(a,b)]` is the
    /// 1-based colour index s with e_s = ab.
    edges: Vec<(usize, usize)>,
    x: usize,
    y: usize,
}

impl SpecialEnumeration {
    fn new(h: &Pattern, e: (usize, usize)) -> Self {
        // x is the endpoint of larger degree
        let (x, y) = if h.degree(e.0) >= h.degree(e.1) {
            (e.0, e.1)
        } else {
            (e.1, e.0)
        };
        let others: Vec<usize> = (0..h.n()).filter(|&v| v != x && v != y).collect();
        let mut edges: Vec<(usize, usize)> =
            h.edges().iter().copied().filter(|&f| f != e).collect();
        edges.push(e);
        SpecialEnumeration { others, edges, x, y }
    }

    fn edge_index(&self, a: usize, b: usize) -> u32 {
        let key = (a.min(b), a.max(b));
        self.edges.iter().position(|&f| f == key).unwrap() as u32 + 1
    }
}

/// Construction around a non-pendant edge outside triangles: m disjoint
/// copies of H minus the special edge's endpoints, an independent set L
/// joined by the neighbourhood rule, colours substituted per copy.
pub fn construct_acyclic_edge(n: usize, h: &Pattern) -> Result<ConstructionOutput, ConstructError> {
    construct_acyclic_edge_with_palette(n, h, h.edge_count() as u32)
}

pub fn construct_acyclic_edge_with_palette(
    n: usize,
    h: &Pattern,
    t: u32,
) -> Result<ConstructionOutput, ConstructError> {
    let special = find_special_edge(h)
        .map_err(|e| ConstructError::BadInput(e.to_string()))?;
    let e = match special {
        SpecialEdge::CycleNotTriangle(e) | SpecialEdge::NonPendantBridge(e) => e,
        _ => return Err(ConstructError::NoQualifyingEdge),
    };
    let m = h.edge_count();
    let p = h.n();
    let t = t.max(m as u32);
    let bound = (m * (p - 2) * n) as f64;
    let mut meta = vec![("special_edge_kind".into(), special.kind().to_string())];
    if n <= m * (p - 2) {
        meta.push(("fallback".into(), "monochromatic_complete".into()));
        return Ok(ConstructionOutput {
            name: "acyclic-edge".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: bound,
            seed: None,
            retries: 0,
            meta,
        });
    }
    let en = SpecialEnumeration::new(h, e);
    let block = p - 2;
    let k_size = m * block;
    let mut g = ColoredGraph::new(n, t);
    let vertex = |copy: usize, local: usize| copy * block + local; // copy 0-based
    // copies of H \ {x, y}
    for copy in 0..m {
        let i = copy as u32 + 1;
        for a in 0..block {
            for b in a + 1..block {
                if h.has_edge(en.others[a], en.others[b]) {
                    let s = en.edge_index(en.others[a], en.others[b]);
                    let c = if s != i { s } else { m as u32 };
                    g.add_edge(vertex(copy, a), vertex(copy, b), c).unwrap();
                }
            }
        }
    }
    // L joined by the neighbourhood rule
    for u in k_size..n {
        for copy in 0..m {
            let i = copy as u32 + 1;
            for (a, &va) in en.others.iter().enumerate() {
                let s = if h.has_edge(en.x, va) {
                    Some(en.edge_index(en.x, va))
                } else if h.has_edge(en.y, va) {
                    Some(en.edge_index(en.y, va))
                } else {
                    None
                };
                if let Some(s) = s {
                    let c = if s != i { s } else { m as u32 };
                    g.add_edge(u, vertex(copy, a), c).unwrap();
                }
            }
        }
    }
    let graph = close(g, h)?;
    Ok(ConstructionOutput {
        name: "acyclic-edge".into(),
        graph,
        protected: (k_size..n).collect(),
        declared_bound: bound,
        seed: None,
        retries: 0,
        meta,
    })
}

/// Randomized construction around a triangle edge: m·h copies of
/// H minus the endpoints, with coin-flipped attachment of L, redrawn until
/// the deterministic bad-pair check passes.
pub fn construct_triangle_edge(
    n: usize,
    h: &Pattern,
    seed: u64,
) -> Result<ConstructionOutput, ConstructError> {
    construct_triangle_edge_with_palette(n, h, seed, h.edge_count() as u32)
}

pub fn construct_triangle_edge_with_palette(
    n: usize,
    h: &Pattern,
    seed: u64,
    t: u32,
) -> Result<ConstructionOutput, ConstructError> {
    // lexicographically least edge contained in a triangle
    let e = h
        .edges()
        .iter()
        .copied()
        .find(|&(u, v)| {
            (0..h.n()).any(|w| w != u && w != v && h.has_edge(u, w) && h.has_edge(v, w))
        })
        .ok_or_else(|| ConstructError::BadParameters("pattern has no triangle".into()))?;
    let m = h.edge_count();
    let p = h.n();
    let t = t.max(m as u32);
    let rounds = ((n * n * m + 1) as f64).log2().ceil() as usize;
    let block = p - 2;
    let k_size = m * rounds * block;
    let mut meta = vec![("h".into(), rounds.to_string())];
    if n <= k_size {
        meta.push(("fallback".into(), "monochromatic_complete".into()));
        return Ok(ConstructionOutput {
            name: "triangle-edge".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: (n * k_size.max(1)) as f64,
            seed: Some(seed),
            retries: 0,
            meta,
        });
    }
    let en = SpecialEnumeration::new(h, e);
    let l_size = n - k_size;
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        // coins[u][copy]: true means the copy plays x for u
        let coins: Vec<Vec<bool>> = (0..l_size)
            .map(|_| (0..m * rounds).map(|_| rng.gen::<bool>()).collect())
            .collect();
        // deterministic bad-pair check: a pair (uv, i) is bad when every
        // round j agrees on the coin
        let bad = (0..l_size).any(|u| {
            (u + 1..l_size).any(|v| {
                (0..m).any(|i| (0..rounds).all(|j| coins[u][i * rounds + j] == coins[v][i * rounds + j]))
            })
        });
        if bad {
            continue;
        }
        let mut g = ColoredGraph::new(n, t);
        let vertex = |copy: usize, local: usize| copy * block + local;
        for copy in 0..m * rounds {
            let i = (copy / rounds) as u32 + 1;
            for a in 0..block {
                for b in a + 1..block {
                    if h.has_edge(en.others[a], en.others[b]) {
                        let s = en.edge_index(en.others[a], en.others[b]);
                        let c = if s != i { s } else { m as u32 };
                        g.add_edge(vertex(copy, a), vertex(copy, b), c).unwrap();
                    }
                }
            }
        }
        for u in 0..l_size {
            for copy in 0..m * rounds {
                let i = (copy / rounds) as u32 + 1;
                let pick = if coins[u][copy] { en.x } else { en.y };
                for (a, &va) in en.others.iter().enumerate() {
                    if h.has_edge(va, pick) {
                        let s = en.edge_index(va, pick);
                        let c = if s != i { s } else { m as u32 };
                        g.add_edge(k_size + u, vertex(copy, a), c).unwrap();
                    }
                }
            }
        }
        let graph = close(g, h)?;
        return Ok(ConstructionOutput {
            name: "triangle-edge".into(),
            graph,
            protected: (k_size..n).collect(),
            declared_bound: (n * k_size) as f64,
            seed: Some(seed),
            retries: attempt,
            meta,
        });
    }
    Err(ConstructError::RetriesExhausted)
}

/// Two rainbow k-cliques on disjoint half-palettes with l+1 attachment
/// vertices each.
pub fn construct_hkl(
    n: usize,
    k: usize,
    l: usize,
    t: u32,
) -> Result<ConstructionOutput, ConstructError> {
    if !(2 <= l && l <= k.saturating_sub(2)) {
        return Err(ConstructError::BadParameters(format!(
            "need 2 <= l <= k-2, got k={k}, l={l}"
        )));
    }
    if (t as usize) < k * (k - 1) {
        return Err(ConstructError::BadParameters(format!(
            "need t >= k(k-1) = {}, got {t}",
            k * (k - 1)
        )));
    }
    let h = crate::structure::hkl_template(k, l);
    let bound = (2 * k * n) as f64;
    if n < 2 * k {
        return Ok(ConstructionOutput {
            name: "hkl".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: bound,
            seed: None,
            retries: 0,
            meta: vec![("fallback".into(), "monochromatic_complete".into())],
        });
    }
    let half = (k * (k - 1) / 2) as u32;
    let mut g = ColoredGraph::new(n, t);
    // cliques C1 = 0..k (colours from A = 1..=half), C2 = k..2k (from B)
    for (base, off) in [(0usize, 0u32), (k, half)] {
        let mut next = off + 1;
        for a in 0..k {
            for b in a + 1..k {
                g.add_edge(base + a, base + b, next).unwrap();
                next += 1;
            }
        }
    }
    // L joins the first l+1 vertices of each clique; edges at C1 take
    // colours from B' (first l+1 of B), edges at C2 from A'
    for u in 2 * k..n {
        for d in 0..=l {
            g.add_edge(u, d, half + 1 + d as u32).unwrap();
            g.add_edge(u, k + d, 1 + d as u32).unwrap();
        }
    }
    let graph = close(g, &h)?;
    Ok(ConstructionOutput {
        name: "hkl".into(),
        graph,
        protected: (2 * k..n).collect(),
        declared_bound: bound,
        seed: None,
        retries: 0,
        meta: vec![("k".into(), k.to_string()), ("l".into(), l.to_string())],
    })
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// The Hamming-type graph on r^{r/2} tuples, coloured through a
/// 1-factorization of K_r so that every vertex sees every colour exactly
/// once; plus a monochromatic clique on leftover vertices.
pub fn construct_rotated_even(n: usize, r: u32) -> Result<ConstructionOutput, ConstructError> {
    if r < 4 || r % 2 != 0 {
        return Err(ConstructError::BadOrder(r));
    }
    let t = r * (r - 1) / 2;
    let half = (r / 2) as usize;
    let gamma_size = (r as usize).pow(half as u32);
    let copies = n / gamma_size;
    if copies == 0 {
        return Ok(ConstructionOutput {
            name: "rotated-even".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: binom2(n) as f64,
            seed: None,
            retries: 0,
            meta: vec![("fallback".into(), "monochromatic_complete".into())],
        });
    }
    let factorization = one_factorization(r).unwrap();
    // identify colours with the edges of K_r, lexicographically
    let mut color_id = vec![vec![0u32; r as usize]; r as usize];
    let mut next = 1;
    for a in 0..r as usize {
        for b in a + 1..r as usize {
            color_id[a][b] = next;
            color_id[b][a] = next;
            next += 1;
        }
    }
    // tuple digits are 1..=r; component sum mod r maps to [r] via 0 -> r
    let digits = |mut idx: usize| -> Vec<u32> {
        let mut d = vec![0u32; half];
        for slot in d.iter_mut() {
            *slot = (idx % r as usize) as u32 + 1;
            idx /= r as usize;
        }
        d
    };
    let comp_sum = |d: &[u32]| -> u32 {
        let s = d.iter().sum::<u32>() % r;
        if s == 0 {
            r
        } else {
            s
        }
    };
    let mut g = ColoredGraph::new(n, t);
    for copy in 0..copies {
        let base = copy * gamma_size;
        for idx in 0..gamma_size {
            let dx = digits(idx);
            let sx = comp_sum(&dx);
            for comp in 0..half {
                let stride = (r as usize).pow(comp as u32);
                for other in dx[comp] + 1..=r {
                    let jdx = idx + (other - dx[comp]) as usize * stride;
                    let mut dy = dx.clone();
                    dy[comp] = other;
                    let sy = comp_sum(&dy);
                    debug_assert_ne!(sx, sy);
                    // e = {S(x), S(y)} as a K_r edge (0-based endpoints)
                    let e = ((sx - 1).min(sy - 1), (sx - 1).max(sy - 1));
                    let matching_color = factorization.color_of(e.0, e.1);
                    let pos = factorization.g_inv(matching_color, e);
                    let shifted = (comp + 1 + pos - 1) % half + 1;
                    let f = factorization.g(matching_color, shifted);
                    let c = color_id[f.0 as usize][f.1 as usize];
                    g.add_edge(base + idx, base + jdx, c).unwrap();
                }
            }
        }
    }
    // leftover vertices: monochromatic clique
    for u in copies * gamma_size..n {
        for v in u + 1..n {
            g.add_edge(u, v, 1).unwrap();
        }
    }
    let bound = 0.5 * t as f64 * gamma_size as f64 * copies as f64
        + binom2(gamma_size - 1) as f64;
    Ok(ConstructionOutput {
        name: "rotated-even".into(),
        graph: g,
        protected: (0..copies * gamma_size).collect(),
        declared_bound: bound,
        seed: None,
        retries: 0,
        meta: vec![("r".into(), r.to_string()), ("copies".into(), copies.to_string())],
    })
}

/// Clique construction with randomly coloured attachment edges; with an
/// unrestricted palette every edge simply gets a fresh colour.
pub fn construct_clique_random(
    n: usize,
    r: usize,
    t: u32,
    seed: u64,
) -> Result<ConstructionOutput, ConstructError> {
    if r < 3 || (t as usize) < binom2(r) {
        return Err(ConstructError::BadParameters(format!(
            "need r >= 3 and t >= C(r,2), got r={r}, t={t}"
        )));
    }
    let h = clique(r);
    let unrestricted = t as usize >= binom2(n);
    let ell = if unrestricted {
        1
    } else {
        ((10.0 * (n as f64).log2() / (t as f64).log2()).ceil() as usize).max(1)
    };
    let core = 2 * ell * (r - 2);
    let bound = if ell == 1 {
        (2 * (r - 2) * n) as f64
    } else {
        (2 * ell * (r - 2) * n) as f64
    };
    if n < core + 2 {
        return Ok(ConstructionOutput {
            name: "clique-random".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: bound.max(binom2(n) as f64),
            seed: Some(seed),
            retries: 0,
            meta: vec![("fallback".into(), "monochromatic_complete".into())],
        });
    }
    let cliques: Vec<Vec<usize>> = (0..2 * ell)
        .map(|q| (q * (r - 2)..(q + 1) * (r - 2)).collect())
        .collect();
    let half = t / 2 + t % 2; // |A| = ceil(t/2)
    let clique_colors = |q: usize| -> Vec<u32> {
        let off = if q < ell { 0 } else { half };
        (1..=binom2(r - 2) as u32).map(|c| c + off).collect()
    };
    if unrestricted {
        // every edge a distinct colour; the post-check then holds
        // deterministically
        let mut g = ColoredGraph::new(n, t);
        let mut next = 1u32;
        for cl in &cliques {
            for a in 0..cl.len() {
                for b in a + 1..cl.len() {
                    g.add_edge(cl[a], cl[b], next).unwrap();
                    next += 1;
                }
            }
        }
        for x in core..n {
            for v in 0..core {
                g.add_edge(x, v, next).unwrap();
                next += 1;
            }
        }
        debug_assert!(m_pairs_saturated(&g, core, &h));
        let graph = close(g, &h)?;
        return Ok(ConstructionOutput {
            name: "clique-random".into(),
            graph,
            protected: (core..n).collect(),
            declared_bound: bound,
            seed: Some(seed),
            retries: 0,
            meta: vec![("ell".into(), "1".into()), ("palette".into(), "unrestricted".into())],
        });
    }
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut g = ColoredGraph::new(n, t);
        for (q, cl) in cliques.iter().enumerate() {
            let colors = clique_colors(q);
            let mut it = colors.iter();
            for a in 0..cl.len() {
                for b in a + 1..cl.len() {
                    g.add_edge(cl[a], cl[b], *it.next().unwrap()).unwrap();
                }
            }
        }
        for x in core..n {
            for (q, cl) in cliques.iter().enumerate() {
                // same half as the clique's own colours, minus those colours
                let used = clique_colors(q);
                let pool: Vec<u32> = if q < ell {
                    (1..=half).filter(|c| !used.contains(c)).collect()
                } else {
                    (half + 1..=t).filter(|c| !used.contains(c)).collect()
                };
                let mut pick: Vec<u32> = pool
                    .choose_multiple(&mut rng, r - 2)
                    .copied()
                    .collect();
                pick.sort_unstable();
                for (v, c) in cl.iter().zip(pick) {
                    g.add_edge(x, *v, c).unwrap();
                }
            }
        }
        if !m_pairs_saturated(&g, core, &h) {
            continue;
        }
        let graph = close(g, &h)?;
        return Ok(ConstructionOutput {
            name: "clique-random".into(),
            graph,
            protected: (core..n).collect(),
            declared_bound: bound,
            seed: Some(seed),
            retries: attempt,
            meta: vec![("ell".into(), ell.to_string())],
        });
    }
    Err(ConstructError::RetriesExhausted)
}

/// Deterministic gate: every (pair inside M, colour) must already create a
/// rainbow copy.
fn m_pairs_saturated(g: &ColoredGraph, core: usize, h: &Pattern) -> bool {
    for u in core..g.n() {
        for v in u + 1..g.n() {
            for c in 1..=g.t() {
                if !creates_rainbow(g, u, v, c, h).expect("non-edge") {
                    return false;
                }
            }
        }
    }
    true
}

/// Complete bipartite graph between flag tuples and [k]x[3], coloured by
/// the Steiner third-point rule.
pub fn construct_k3_steiner(n: usize, t: u32) -> Result<ConstructionOutput, ConstructError> {
    let sts = steiner_triple_system(t)?;
    let h = clique(3);
    let flags = sts.flags();
    let f = flags.len() as u128; // C(t,2)
    let mut k = 1usize;
    while f.saturating_pow(k as u32) + 3 * (k as u128) < n as u128 {
        k += 1;
    }
    let k_size = 3 * k;
    if n <= k_size {
        return Ok(ConstructionOutput {
            name: "k3-steiner".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: binom2(n) as f64,
            seed: None,
            retries: 0,
            meta: vec![("fallback".into(), "monochromatic_complete".into())],
        });
    }
    let v_size = n - k_size;
    let mut g = ColoredGraph::new(n, t);
    // tuple vertex `u` encodes its flag indices in mixed radix, most
    // significant component first so lexicographic order matches
    let tuple = |mut u: usize| -> Vec<usize> {
        let mut d = vec![0usize; k];
        for slot in d.iter_mut().rev() {
            *slot = u % flags.len();
            u /= flags.len();
        }
        d
    };
    for u in 0..v_size {
        let comps = tuple(u);
        for i in 0..k {
            let (line, p) = flags[comps[i]];
            for j in 1..=3 {
                let c = sts.star_op(p, sts.line_point(line, j));
                let kv = v_size + i * 3 + (j - 1);
                g.add_edge(u, kv, c).unwrap();
            }
        }
    }
    let graph = close(g, &h)?;
    let bound = 3.0 / (f as f64).log2() * n as f64 * (n as f64).log2() + 3.0 * n as f64;
    Ok(ConstructionOutput {
        name: "k3-steiner".into(),
        graph,
        protected: (0..v_size).collect(),
        declared_bound: bound,
        seed: None,
        retries: 0,
        meta: vec![("k".into(), k.to_string())],
    })
}

fn star_sizes(h: &Pattern) -> Option<Vec<usize>> {
    let comps = h.components();
    let mut sizes = Vec::new();
    for (_, c) in &comps {
        if c.n() < 2 {
            return None; // isolated vertex
        }
        let is_star = c.edge_count() == c.n() - 1
            && (0..c.n()).filter(|&v| c.degree(v) == c.n() - 1).count() >= 1
            && (0..c.n()).filter(|&v| c.degree(v) == 1).count() >= c.n() - 1;
        if !is_star {
            return None;
        }
        sizes.push(c.n());
    }
    sizes.sort_unstable();
    Some(sizes)
}

/// The clique-plus-independent-set construction for disjoint unions of
/// stars.
pub fn construct_star_forest(n: usize, h: &Pattern) -> Result<ConstructionOutput, ConstructError> {
    let sizes = star_sizes(h).ok_or(ConstructError::NotAStarForest)?;
    if sizes.len() < 2 {
        return Err(ConstructError::NotAStarForest);
    }
    let t = h.edge_count() as u32;
    let a = sizes[0] - 1;
    let b = sizes[1] - 1;
    let pair_bound = ((a + b - 1) * n) as f64;
    if sizes.len() == 2 {
        let k_size = a + b - 1;
        if n <= k_size + 1 {
            return Ok(ConstructionOutput {
                name: "star-forest".into(),
                graph: mono_kn(n, t),
                protected: Vec::new(),
                declared_bound: pair_bound.max(binom2(n) as f64),
                seed: None,
                retries: 0,
                meta: vec![("fallback".into(), "monochromatic_complete".into())],
            });
        }
        let mut g = ColoredGraph::new(n, t);
        // K = x_1..x_{a+b-1} at indices 0..k_size (x_i is index i-1)
        for i in 1..=k_size {
            for j in i + 1..=k_size {
                let c = if i <= a && j >= a { (a + b) as u32 } else { j as u32 };
                g.add_edge(i - 1, j - 1, c).unwrap();
            }
        }
        for u in k_size..n {
            for i in 1..=k_size {
                g.add_edge(u, i - 1, i as u32).unwrap();
            }
        }
        let graph = close(g, h)?;
        return Ok(ConstructionOutput {
            name: "star-forest".into(),
            graph,
            protected: (k_size..n).collect(),
            declared_bound: pair_bound,
            seed: None,
            retries: 0,
            meta: vec![("a".into(), a.to_string()), ("b".into(), b.to_string())],
        });
    }
    // k >= 3: recursive composition with k-2 disjoint rainbow t-stars
    let k = sizes.len();
    let star_block = (t as usize) + 1;
    let extra = (k - 2) * star_block;
    if n <= extra + a + b + 2 {
        return Ok(ConstructionOutput {
            name: "star-forest".into(),
            graph: mono_kn(n, t),
            protected: Vec::new(),
            declared_bound: binom2(n) as f64,
            seed: None,
            retries: 0,
            meta: vec![("fallback".into(), "monochromatic_complete".into())],
        });
    }
    let pair = {
        let s1 = crate::families::star(a);
        let s2 = crate::families::star(b);
        s1.union(&s2)
    };
    let n_prime = n - extra;
    let mut g = ColoredGraph::new(n, t);
    // inner pair construction occupies 0..n_prime
    let k_size = a + b - 1;
    for i in 1..=k_size {
        for j in i + 1..=k_size {
            let c = if i <= a && j >= a { (a + b) as u32 } else { j as u32 };
            g.add_edge(i - 1, j - 1, c).unwrap();
        }
    }
    for u in k_size..n_prime {
        for i in 1..=k_size {
            g.add_edge(u, i - 1, i as u32).unwrap();
        }
    }
    // close the pair part against S1 u S2 before composing
    let mut inner = ColoredGraph::new(n_prime, t);
    for (u, v, c) in g.edges() {
        if u < n_prime && v < n_prime {
            inner.add_edge(u, v, c).unwrap();
        }
    }
    let inner = close(inner, &pair)?;
    let mut g = ColoredGraph::new(n, t);
    for (u, v, c) in inner.edges() {
        g.add_edge(u, v, c).unwrap();
    }
    // rainbow t-stars
    for s in 0..k - 2 {
        let base = n_prime + s * star_block;
        for leaf in 1..=t as usize {
            g.add_edge(base, base + leaf, leaf as u32).unwrap();
        }
    }
    let graph = close(g, h)?;
    Ok(ConstructionOutput {
        name: "star-forest".into(),
        graph,
        protected: (k_size..n_prime).collect(),
        declared_bound: pair_bound + (extra * n) as f64,
        seed: None,
        retries: 0,
        meta: vec![("stars".into(), k.to_string())],
    })
}

fn subsets_of_size(total: u32, want: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: u32, total: u32, want: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == want {
            out.push(cur.clone());
            return;
        }
        for c in start..=total {
            cur.push(c);
            go(c + 1, total, want, cur, out);
            cur.pop();
        }
    }
    go(1, total, want, &mut cur, &mut out);
    out
}

/// Places a rainbow copy of `pat` into `g` on fresh vertices starting at
/// `base`, edges coloured by `colors` in lexicographic edge order. When
/// `glue` is set, pattern vertex `glue.0` maps onto existing vertex
/// `glue.1` instead of a fresh one.
fn place_rainbow_copy(
    g: &mut ColoredGraph,
    pat: &Pattern,
    base: usize,
    colors: &[u32],
    glue: Option<(usize, usize)>,
) -> usize {
    let mut map = vec![usize::MAX; pat.n()];
    let mut next = base;
    for v in 0..pat.n() {
        if let Some((gv, host)) = glue {
            if v == gv {
                map[v] = host;
                continue;
            }
        }
        map[v] = next;
        next += 1;
    }
    for (idx, &(u, v)) in pat.edges().iter().enumerate() {
        g.add_edge(map[u], map[v], colors[idx]).unwrap();
    }
    next
}

/// Construction for disconnected patterns with at least one non-star
/// component: all-rainbow copies of the minor components, bouquets of the
/// maximal one, and a saturated core for the maximal component.
pub fn construct_disconnected(
    n: usize,
    h: &Pattern,
    t: u32,
    seed: u64,
) -> Result<ConstructionOutput, ConstructError> {
    let comps = h.components();
    if comps.len() < 2 {
        return Err(ConstructError::BadInput("pattern is connected".into()));
    }
    if comps.iter().any(|(_, c)| c.n() < 2) {
        return Err(ConstructError::BadInput("pattern has an isolated vertex".into()));
    }
    if star_sizes(h).is_some() {
        return construct_star_forest(n, h);
    }
    if (t as usize) < h.edge_count() {
        return Err(ConstructError::BadParameters(format!(
            "need t >= e(H) = {}",
            h.edge_count()
        )));
    }
    // maximal component: largest total vertices+edges, first on ties
    let patterns: Vec<&Pattern> = comps.iter().map(|(_, c)| c).collect();
    let max_idx = (0..patterns.len())
        .max_by_key(|&i| (patterns[i].n() + patterns[i].edge_count(), std::cmp::Reverse(i)))
        .unwrap();
    let h1 = patterns[max_idx];
    let ell = patterns.iter().filter(|c| isomorphic(c, h1)).count();
    // H' = the components not isomorphic to H1
    let minors: Vec<&Pattern> = patterns
        .iter()
        .copied()
        .filter(|c| !isomorphic(c, h1))
        .collect();
    let t_prime = h.edge_count() as u32;

    let mut g = ColoredGraph::new(n, t);
    let mut cursor = 0usize;
    // V1: a disjoint rainbow copy of H' for every e(H')-subset of [t']
    let mut h_prime: Option<Pattern> = None;
    for c in &minors {
        h_prime = Some(match h_prime {
            None => (*c).clone(),
            Some(p) => p.union(c),
        });
    }
    if let Some(ref hp) = h_prime {
        for colors in subsets_of_size(t_prime, hp.edge_count()) {
            if cursor + hp.n() > n {
                return Ok(fallback_disconnected(n, t, seed));
            }
            cursor = place_rainbow_copy(&mut g, hp, cursor, &colors, None);
        }
    }
    let v1_end = cursor;
    // V2: ell-1 bouquets of H1, all colour-subsets glued at one vertex
    let glue_vertex = (0..h1.n())
        .max_by_key(|&v| (h1.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    for _ in 0..ell.saturating_sub(1) {
        if cursor >= n {
            return Ok(fallback_disconnected(n, t, seed));
        }
        let hub = cursor;
        cursor += 1;
        let mut first = true;
        for colors in subsets_of_size(t_prime, h1.edge_count()) {
            if cursor + h1.n() - 1 > n {
                return Ok(fallback_disconnected(n, t, seed));
            }
            // hub plays the glue vertex in every copy
            let _ = first;
            first = false;
            cursor = place_rainbow_copy(&mut g, h1, cursor, &colors, Some((glue_vertex, hub)));
        }
    }
    let v2_end = cursor;
    let rest = n - cursor;
    if rest < h1.n() + 2 {
        return Ok(fallback_disconnected(n, t, seed));
    }
    // remainder: a rainbow-H1-saturated graph on `rest` vertices
    let core = match find_special_edge(h1).map_err(|e| ConstructError::BadInput(e.to_string()))? {
        SpecialEdge::CycleNotTriangle(_) | SpecialEdge::NonPendantBridge(_) => {
            construct_acyclic_edge_with_palette(rest, h1, t)?
        }
        SpecialEdge::TriangleEdge(_) => construct_triangle_edge_with_palette(rest, h1, seed, t)?,
        SpecialEdge::NoSpecialEdge => {
            return Err(ConstructError::BadInput(
                "maximal component is a star; use the star-forest construction".into(),
            ))
        }
    };
    for (u, v, c) in core.graph.edges() {
        g.add_edge(cursor + u, cursor + v, c).unwrap();
    }
    if find_rainbow_copy(&g, h).is_some() {
        return Err(ConstructError::NotRainbowFree);
    }
    let graph = close(g, h)?;
    let p = v2_end;
    Ok(ConstructionOutput {
        name: "disconnected".into(),
        graph,
        protected: (v2_end..n).collect(),
        declared_bound: (p * n + binom2(p)) as f64 + core.declared_bound,
        seed: Some(seed),
        retries: core.retries,
        meta: vec![
            ("v1".into(), v1_end.to_string()),
            ("v2".into(), (v2_end - v1_end).to_string()),
        ],
    })
}

fn fallback_disconnected(n: usize, t: u32, seed: u64) -> ConstructionOutput {
    ConstructionOutput {
        name: "disconnected".into(),
        graph: mono_kn(n, t),
        protected: Vec::new(),
        declared_bound: binom2(n) as f64,
        seed: Some(seed),
        retries: 0,
        meta: vec![("fallback".into(), "monochromatic_complete".into())],
    }
}
